#include "turnpike/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "turnpike/errors.hpp"
#include "turnpike/roots.hpp"

namespace turnpike {

PolyP::PolyP(int n, std::vector<double> lambda) : n_(n), lambda_(std::move(lambda)) {
    if (n_ < 1) throw PreconditionError("PolyP: n must be positive");
    if (static_cast<int>(lambda_.size()) != 2 * n_)
        throw PreconditionError("PolyP: expected 2n = " + std::to_string(2 * n_) +
                                " coefficients, got " + std::to_string(lambda_.size()));
    for (double c : lambda_)
        if (!std::isfinite(c)) throw PreconditionError("PolyP: non-finite coefficient");
}

double PolyP::operator()(double v) const noexcept {
    double acc = -1.0;
    for (int k = 2 * n_ - 1; k >= 0; --k) acc = acc * v + lambda_[k];
    return acc;
}

double PolyP::derivative(double v) const noexcept {
    const int d = 2 * n_;
    double acc = -static_cast<double>(d);
    for (int k = d - 1; k >= 1; --k) acc = acc * v + k * lambda_[k];
    return acc;
}

double PolyP::reversed(double u) const noexcept {
    // sum_k lambda_k u^{2n-k} - 1, Horner in u over lambda_0 .. lambda_{2n-1}
    double acc = 0.0;
    for (int k = 0; k < 2 * n_; ++k) acc = acc * u + lambda_[k];
    return acc * u - 1.0;
}

PolyP PolyP::reflected() const {
    std::vector<double> c(lambda_);
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return PolyP(n_, std::move(c));
}

PolyP PolyP::with_coefficient(int index, double value) const {
    if (index < 0 || index >= 2 * n_) throw PreconditionError("PolyP: coefficient index out of range");
    std::vector<double> c(lambda_);
    c[static_cast<std::size_t>(index)] = value;
    return PolyP(n_, std::move(c));
}

PolyP::Extremum PolyP::global_max() const {
    // Cauchy bound for the roots of P' (leading coefficient -2n).
    const int d = 2 * n_;
    double bound = 0.0;
    for (int k = 1; k < d; ++k) bound = std::max(bound, std::abs(k * lambda_[k]) / d);
    bound += 1.0;

    constexpr int kScan = 4096;
    const double step = 2.0 * bound / kScan;
    Extremum best{-bound, (*this)(-bound)};
    auto consider = [&](double v) {
        const double pv = (*this)(v);
        if (pv > best.value) best = {v, pv};
    };
    double prev_v = -bound;
    double prev_d = derivative(prev_v);
    for (int i = 1; i <= kScan; ++i) {
        const double v = -bound + i * step;
        const double dv = derivative(v);
        consider(v);
        if (prev_d > 0.0 && dv <= 0.0)
            consider(find_root([this](double s) { return derivative(s); }, prev_v, v, 1e-15).x);
        prev_v = v;
        prev_d = dv;
    }
    return best;
}

SlowFastModel::SlowFastModel(PolyP p_, ZetaFn zeta_, GFn g_, double delta_, Interval domain_,
                             Interval entry_, Interval exit_, std::string name_)
    : p(std::move(p_)),
      zeta(std::move(zeta_)),
      g(std::move(g_)),
      delta(delta_),
      domain(domain_),
      entry(entry_),
      exit(exit_),
      name(std::move(name_)) {
    if (!zeta || !g) throw PreconditionError("SlowFastModel: zeta and g must be callable");
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("SlowFastModel: delta must lie in (0,1)");
    if (!(domain.lo < 0.0 && domain.hi > 0.0))
        throw PreconditionError("SlowFastModel: I must contain 0 in its interior");
    if (!(entry.lo > 0.0 && entry.lo <= entry.hi))
        throw PreconditionError("SlowFastModel: I_in must be a closed interval in (0, inf)");
    if (!(exit.hi < 0.0 && exit.lo <= exit.hi))
        throw PreconditionError("SlowFastModel: I_out must be a closed interval in (-inf, 0)");
    const double z00 = zeta(0.0, 0.0);
    if (std::abs(z00 + 1.0) > 1e-14)
        throw PreconditionError("SlowFastModel: zeta(0,0) must equal -1, got " + std::to_string(z00));
}

double SlowFastModel::section_z() const noexcept { return -1.0 / std::log(delta); }

double y_from_z(double z) noexcept {
    // below this, exp(-1/z) is subnormal or zero
    static const double kMaxExponent = -std::log(std::numeric_limits<double>::min());
    if (!(z > 0.0)) return 0.0;
    const double e = 1.0 / z;
    if (e > kMaxExponent) return 0.0;
    return std::exp(-e);
}

double z_from_y(double y) {
    if (y == 0.0) return 0.0;
    if (!(y > 0.0 && y < 1.0)) throw PreconditionError("z_from_y: y must lie in [0,1)");
    return -1.0 / std::log(y);
}

double eval_f_lambda(const SlowFastModel& model, double x, double eps) {
    // eps^{2n} P(x/eps) + x^{2n}(zeta + 1), expanded so that the -x^{2n} terms
    // cancel analytically instead of in floating point.
    const int n2 = 2 * model.n();
    const auto lam = model.p.lambda();
    double acc = 0.0;
    double xk = 1.0;
    for (int k = 0; k < n2; ++k) {
        if (lam[k] != 0.0) acc += lam[k] * std::pow(eps, n2 - k) * xk;
        xk *= x;
    }
    return acc + xk * model.zeta(x, eps);
}

Derivative2 vector_field_xy(const SlowFastModel& model, StateXY s) {
    const double slow = s.eps == 0.0 ? 0.0 : s.eps * eval_f_lambda(model, s.x, s.eps);
    return {slow + s.y * model.g(s.x, s.y, s.eps), -s.x * s.y};
}

Derivative2 vector_field_xz(const SlowFastModel& model, StateXZ s) {
    const double y = y_from_z(s.z);
    const double slow = s.eps == 0.0 ? 0.0 : s.eps * eval_f_lambda(model, s.x, s.eps);
    const double fast = y == 0.0 ? 0.0 : y * model.g(s.x, y, s.eps);
    return {slow + fast, -s.x * s.z * s.z};
}

double HypothesisReport::margin() const noexcept { return std::min(zeta_margin, p_margin); }

HypothesisReport check_hypotheses(const SlowFastModel& model, double eps_max, int grid) {
    if (grid < 2) throw PreconditionError("check_hypotheses: grid must be >= 2");
    if (!(eps_max > 0.0)) throw PreconditionError("check_hypotheses: eps_max must be positive");

    HypothesisReport rep;
    const Interval I = model.domain;
    auto x_at = [&](int i) { return I.lo + I.width() * i / (grid - 1); };

    double zmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double x = x_at(i);
        const double zv = model.zeta(x, 0.0);
        if (zv > zmax) {
            zmax = zv;
            rep.zeta_witness = GridPoint{x, 0.0, zv};
        }
    }
    rep.zeta_margin = -zmax;
    rep.zeta_bound_ok = zmax < 0.0;
    if (rep.zeta_bound_ok) rep.zeta_witness.reset();

    const auto pmax = model.p.global_max();
    rep.p_margin = -pmax.value;
    rep.p_negative_definite = pmax.value < 0.0;
    if (!rep.p_negative_definite) rep.p_witness = GridPoint{pmax.arg, 0.0, pmax.value};

    double fmax = -std::numeric_limits<double>::infinity();
    std::optional<GridPoint> fwit;
    auto probe = [&](double x, double eps) {
        const double fv = eval_f_lambda(model, x, eps);
        if (fv > fmax) fmax = fv;
        if (fv >= 0.0 && !fwit) fwit = GridPoint{x, eps, fv};
    };
    for (int j = 1; j <= grid; ++j) {
        const double eps = eps_max * j / grid;
        for (int i = 0; i < grid; ++i) probe(x_at(i), eps);
        if (I.contains(0.0)) probe(0.0, eps);
    }
    rep.f_margin = -fmax;
    rep.f_negative_ok = !fwit.has_value();
    rep.f_witness = fwit;
    return rep;
}

namespace builtin {

ZetaFn zeta_ddr(double beta) {
    return [beta](double x, double) { return -1.0 + beta * x; };
}

ZetaFn zeta_constant_minus_one() {
    return [](double, double) { return -1.0; };
}

ZetaFn zeta_poly(std::vector<double> coeffs) {
    if (coeffs.empty() || coeffs.front() != -1.0)
        throw PreconditionError("zeta poly: constant coefficient must be -1");
    return [c = std::move(coeffs)](double x, double) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
}

GFn g_constant(double value) {
    return [value](double, double, double) { return value; };
}

GFn g_ddr() { return g_constant(-1.0); }

}  // namespace builtin

Interval ddr_admissible_entry(double lambda0, double lambda1, double beta, double delta) {
    const double disc = -4.0 * lambda0 - lambda1 * lambda1;
    if (!(disc > 0.0)) throw PreconditionError("DDR: need 4 lambda0 + lambda1^2 < 0");
    if (!(beta > 0.0)) throw PreconditionError("DDR: beta must be positive");
    const double K = lambda1 * std::numbers::pi / std::sqrt(disc);
    const double cap = 1.0 / (beta * (std::exp(K) + 1.0));
    return {std::sqrt(2.0 * delta), std::sqrt(2.0 * delta + cap * cap)};
}

SlowFastModel make_ddr_model(double lambda0, double lambda1, double beta, double delta) {
    const Interval adm = ddr_admissible_entry(lambda0, lambda1, beta, delta);
    const double w = adm.width();
    const Interval entry{adm.lo + 0.2 * w, adm.lo + 0.75 * w};
    const double xs = std::sqrt(2.0 * delta);
    const Interval domain{-10.0, 0.95 / beta};
    const Interval exit{-9.5, -xs - 1e-3};
    return SlowFastModel(PolyP(1, {lambda0, lambda1}), builtin::zeta_ddr(beta), builtin::g_ddr(),
                         delta, domain, entry, exit, "ddr");
}

}  // namespace turnpike
