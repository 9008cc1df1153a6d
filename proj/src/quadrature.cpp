#include "turnpike/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; the Gauss 7-point
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

double checked(const Integrand& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw NumericalError("adaptive_quad: non-finite integrand at s = " + std::to_string(x));
    return v;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = checked(f, c);
    double k15 = fc * kWgk[7];
    double g7 = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double sum = checked(f, c - dx) + checked(f, c + dx);
        k15 += kWgk[j] * sum;
        if (j % 2 == 1) g7 += kWg[j / 2] * sum;
    }
    return {a, b, k15 * h, std::abs((k15 - g7) * h)};
}

}  // namespace

QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol) {
    QuadOptions o;
    o.abs_tol = tol;
    return adaptive_quad(f, a, b, o);
}

QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadOptions& opts) {
    if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0))
        throw PreconditionError("adaptive_quad: tolerance must be positive");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw PreconditionError("adaptive_quad: endpoints must be finite");
    if (a == b) return {};
    if (b < a) {
        QuadResult r = adaptive_quad(f, b, a, opts);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Panel> heap;
    double value = 0.0;
    double error = 0.0;
    const int n0 = std::max(1, opts.initial_panels);
    for (int i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * i / n0;
        const double hi = i + 1 == n0 ? b : a + (b - a) * (i + 1) / n0;
        Panel p = gauss_kronrod(f, lo, hi);
        value += p.value;
        error += p.error;
        heap.push(p);
    }

    int panels = n0;
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    while (error > target()) {
        if (panels >= opts.max_intervals)
            throw NumericalError("adaptive_quad: subdivision cap reached on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "], error estimate " +
                                 std::to_string(error) + " (singular integrand?)");
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Panel at machine resolution; accept what we have.
            heap.push(worst);
            break;
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    if (error > target() * 1.0000001 && error > 1e-15 * std::abs(value))
        throw NumericalError("adaptive_quad: tolerance not reached, error estimate " +
                             std::to_string(error));
    return {value, error, panels - n0};
}

double slow_regular_integral(const ZetaFn& zeta, double a, double b, double tol) {
    constexpr double kWindow = 1e-6;
    constexpr double kZetaFloor = 1e-8;
    auto raw = [&zeta](double s) {
        const double zv = zeta(s, 0.0);
        if (std::abs(zv) < kZetaFloor)
            throw NumericalError("pv_slow: zeta(s,0) vanishes near s = " + std::to_string(s));
        return (zv + 1.0) / (s * zv);
    };
    const double left = raw(-kWindow);
    const double right = raw(kWindow);
    Integrand regular = [&](double s) {
        if (std::abs(s) < kWindow) return left + (right - left) * (s + kWindow) / (2.0 * kWindow);
        return raw(s);
    };
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    double total = 0.0;
    if (lo < 0.0 && hi > 0.0) {
        total = adaptive_quad(regular, lo, 0.0, 0.5 * tol).value +
                adaptive_quad(regular, 0.0, hi, 0.5 * tol).value;
    } else {
        total = adaptive_quad(regular, lo, hi, tol).value;
    }
    return b >= a ? total : -total;
}

double pv_slow(const ZetaFn& zeta, double x_out_b, double x_in_b, double tol) {
    if (!(x_out_b < 0.0 && x_in_b > 0.0))
        throw PreconditionError("pv_slow: need x_out_b < 0 < x_in_b");
    if (std::abs(zeta(0.0, 0.0) + 1.0) > 1e-14)
        throw PreconditionError("pv_slow: zeta(0,0) must be -1");
    return slow_regular_integral(zeta, x_out_b, x_in_b, tol) + std::log(-x_out_b / x_in_b);
}

double pv_fast_quadratic(double lambda0, double lambda1) {
    const double disc = -4.0 * lambda0 - lambda1 * lambda1;
    if (!(disc > 0.0))
        throw PreconditionError("pv_fast_quadratic: need 4 lambda0 + lambda1^2 < 0");
    return -lambda1 * std::numbers::pi / std::sqrt(disc);
}

double pv_fast_numeric(const PolyP& p, double tol) {
    if (p.n() != 1) throw PreconditionError("pv_fast_numeric: only defined for n = 1");
    if (!p.is_negative_definite()) throw PreconditionError("pv_fast_numeric: P must be negative");
    const double l0 = p.lambda()[0];
    const double l1 = p.lambda()[1];
    const PolyP r = p.reflected();
    const double core = adaptive_quad([&](double s) { return s / p(s); }, -1.0, 1.0, 0.5 * tol).value;
    const double tails =
        adaptive_quad(
            [&](double u) { return (l0 * u + l1) / p.reversed(u) + (l1 - l0 * u) / r.reversed(u); },
            0.0, 1.0, 0.5 * tol)
            .value;
    return core + tails;
}

double fast_regular_positive(const PolyP& p, double tol) {
    if (p.n() != 1) throw PreconditionError("fast_regular_positive: only defined for n = 1");
    const double l0 = p.lambda()[0];
    const double l1 = p.lambda()[1];
    const double core = adaptive_quad([&](double s) { return s / p(s); }, 0.0, 1.0, 0.5 * tol).value;
    const double tail =
        adaptive_quad([&](double u) { return (l0 * u + l1) / p.reversed(u); }, 0.0, 1.0, 0.5 * tol)
            .value;
    return core + tail;
}

namespace {

// int_0^inf v^k / P^m dv with the tail folded onto (0, 1] by v = 1/u.
double positive_moment(const PolyP& p, int k, int m, double tol) {
    const int tail_power = 2 * p.n() * m - k - 2;
    const double core = adaptive_quad(
                            [&](double v) { return std::pow(v, k) / std::pow(p(v), m); }, 0.0, 1.0,
                            0.5 * tol)
                            .value;
    const double tail = adaptive_quad(
                            [&](double u) {
                                return std::pow(u, tail_power) / std::pow(p.reversed(u), m);
                            },
                            0.0, 1.0, 0.5 * tol)
                            .value;
    return core + tail;
}

}  // namespace

double whole_line_moment(const PolyP& p, int k, int m, double tol) {
    if (k < 0 || m < 1) throw PreconditionError("whole_line_moment: need k >= 0, m >= 1");
    if (2 * p.n() * m - k < 2)
        throw PreconditionError("whole_line_moment: integral not absolutely convergent");
    if (!p.is_negative_definite()) throw PreconditionError("whole_line_moment: P must be negative");
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return positive_moment(p, k, m, 0.5 * tol) + sign * positive_moment(p.reflected(), k, m, 0.5 * tol);
}

double half_line_integral(const PolyP& p, Side side, double tol) {
    if (p.n() < 2)
        throw PreconditionError("half_line_integral: needs n >= 2 (n = 1 diverges logarithmically)");
    if (!p.is_negative_definite()) throw PreconditionError("half_line_integral: P must be negative");
    if (side == Side::positive) return positive_moment(p, 1, 1, tol);
    return -positive_moment(p.reflected(), 1, 1, tol);
}

double classical_sdi(const Integrand& h_over_f, double x_in, double x_out, double tol) {
    return adaptive_quad(h_over_f, x_in, x_out, tol).value;
}

}  // namespace turnpike
