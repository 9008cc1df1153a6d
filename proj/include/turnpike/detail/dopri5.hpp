#pragma once

// Dormand-Prince 5(4) with PI step control and the 4th-order continuous
// extension of Hairer, Norsett & Wanner (DOPRI5 "contd5"). Autonomous
// systems only; time always runs forward (negate the field to go backward).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike::detail {

template <std::size_t N>
using Vec = std::array<double, N>;

struct StepControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0: automatic
    double max_time = std::numeric_limits<double>::infinity();
    long max_steps = 2'000'000;
    double event_tol = 1e-13;
};

enum class Crossing { up, down, any };

template <std::size_t N>
struct EventFn {
    std::function<double(const Vec<N>&)> value;
    // Direction of the gradient of `value` (for the Newton polish); value is
    // assumed linear in the state: g(y) = grad . y + const.
    Vec<N> grad{};
    Crossing direction = Crossing::any;
    bool terminal = false;
    std::function<bool(const Vec<N>&)> guard;  // optional acceptance test at the event
};

template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec<N>, 5> r{};

    [[nodiscard]] Vec<N> at(double t) const { return at_theta((t - t0) / h); }

    /// State at the local parameter theta in [0, 1].
    [[nodiscard]] Vec<N> at_theta(double th) const {
        const double th1 = 1.0 - th;
        Vec<N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        return out;
    }
};

template <std::size_t N>
struct EventHit {
    std::size_t index = 0;  // into the event list passed to solve()
    double t = 0.0;
    Vec<N> state{};
    double residual = 0.0;
};

template <std::size_t N>
struct Solution {
    std::vector<double> t;
    std::vector<Vec<N>> y;
    std::vector<DenseSegment<N>> dense;  // dense[i] spans [t[i], t[i+1]]
    std::vector<EventHit<N>> events;
    bool terminated_by_event = false;
    long accepted = 0;
    long rejected = 0;
};

/// Thrown on step-size underflow or when a step/time budget is exhausted.
template <std::size_t N>
class IntegrationFailure : public NumericalError {
public:
    IntegrationFailure(const std::string& what, double t, const Vec<N>& y)
        : NumericalError(what), t_(t), y_(y) {}
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] const Vec<N>& state() const noexcept { return y_; }

private:
    double t_;
    Vec<N> y_;
};

template <std::size_t N, class Rhs, class Admissible>
Solution<N> solve(const Rhs& rhs, Vec<N> y0, const std::vector<EventFn<N>>& events,
                  const StepControl& ctl, const Admissible& admissible) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                            d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                            d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
    (void)c2; (void)c3; (void)c4; (void)c5;

    Solution<N> sol;
    double t = 0.0;
    Vec<N> y = y0;
    Vec<N> k1 = rhs(y);
    sol.t.push_back(t);
    sol.y.push_back(y);

    auto norm_scaled = [&](const Vec<N>& v, const Vec<N>& ya, const Vec<N>& yb) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            s += (v[i] / sk) * (v[i] / sk);
        }
        return std::sqrt(s / N);
    };

    double h = ctl.initial_step;
    if (!(h > 0.0)) {
        // Hairer's starting-step heuristic
        const double dnf = norm_scaled(k1, y, y);
        const double dny = norm_scaled(y, y, y);
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
        h = std::min(h, ctl.max_step);
        Vec<N> y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + h * k1[i];
        const Vec<N> f1 = rhs(y1);
        Vec<N> df;
        for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - k1[i];
        const double der2 = norm_scaled(df, y, y) / h;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
        h = std::min({100.0 * h, h1, ctl.max_step});
    }

    // h_new = h / fac with fac clamped to [1/10, 5]
    constexpr double kSafe = 0.9, kBeta = 0.04, kShrinkMax = 5.0, kGrowMax = 10.0;
    const double expo1 = 0.2 - kBeta * 0.75;
    double facold = 1e-4;
    bool last_rejected = false;
    std::vector<double> g_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].value(y);

    long steps = 0;
    while (true) {
        if (steps >= ctl.max_steps)
            throw IntegrationFailure<N>("integrator: max_steps exceeded", t, y);
        if (t >= ctl.max_time)
            throw IntegrationFailure<N>("integrator: max integration time exceeded", t, y);
        h = std::min({h, ctl.max_step, ctl.max_time - t});
        if (h < 1e-14 * std::max(1.0, std::abs(t)) * 4.0)
            throw IntegrationFailure<N>("integrator: step size underflow", t, y);

        Vec<N> s;
        for (std::size_t i = 0; i < N; ++i) s[i] = y[i] + h * a21 * k1[i];
        const Vec<N> k2 = rhs(s);
        for (std::size_t i = 0; i < N; ++i) s[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec<N> k3 = rhs(s);
        for (std::size_t i = 0; i < N; ++i) s[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec<N> k4 = rhs(s);
        for (std::size_t i = 0; i < N; ++i)
            s[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec<N> k5 = rhs(s);
        for (std::size_t i = 0; i < N; ++i)
            s[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec<N> k6 = rhs(s);
        Vec<N> y1;
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        const Vec<N> k7 = rhs(y1);
        ++steps;

        Vec<N> err;
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double en = norm_scaled(err, y, y1);
        bool finite = std::isfinite(en);
        for (double v : y1) finite = finite && std::isfinite(v);

        if (!finite || !admissible(y1)) {
            ++sol.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }

        const double fac11 = std::pow(en, expo1);
        if (en > 1.0) {
            ++sol.rejected;
            h /= std::min(kShrinkMax, fac11 / kSafe);
            last_rejected = true;
            continue;
        }
        double fac = fac11 / std::pow(facold, kBeta);
        fac = std::max(1.0 / kGrowMax, std::min(kShrinkMax, fac / kSafe));
        double hnew = h / fac;
        facold = std::max(en, 1e-4);
        if (last_rejected) hnew = std::min(hnew, h);
        last_rejected = false;

        DenseSegment<N> seg;
        seg.t0 = t;
        seg.h = h;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y1[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            seg.r[0][i] = y[i];
            seg.r[1][i] = ydiff;
            seg.r[2][i] = bspl;
            seg.r[3][i] = ydiff - h * k7[i] - bspl;
            seg.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        const double t1 = t + h;
        ++sol.accepted;

        // Event scan over [t, t1]; the earliest terminal hit ends the run.
        std::vector<EventHit<N>> hits;
        std::vector<double> g_new(events.size());
        for (std::size_t e = 0; e < events.size(); ++e) {
            const auto& ev = events[e];
            const double ga = g_prev[e];
            const double gb = ev.value(y1);
            g_new[e] = gb;
            const bool up = ga < 0.0 && gb >= 0.0;
            const bool down = ga > 0.0 && gb <= 0.0;
            const bool crossed = (ev.direction == Crossing::up && up) ||
                                 (ev.direction == Crossing::down && down) ||
                                 (ev.direction == Crossing::any && (up || down));
            if (!crossed) continue;

            // Bisection in the local parameter: absolute t loses resolution on long runs.
            double lo = 0.0, hi = 1.0;
            double glo = ga;
            double th = 1.0;
            Vec<N> ym = y1;
            double gm = gb;
            for (int it = 0; it < 200; ++it) {
                if (std::abs(gm) < ctl.event_tol && it > 0) break;
                th = 0.5 * (lo + hi);
                if (!(lo < th && th < hi)) break;
                ym = seg.at_theta(th);
                gm = ev.value(ym);
                if ((gm < 0.0) == (glo < 0.0) && gm != 0.0) {
                    lo = th;
                    glo = gm;
                } else {
                    hi = th;
                }
            }
            // Newton polish along the interpolant with the field as time derivative.
            for (int it = 0; it < 3 && std::abs(gm) >= ctl.event_tol * 1e-3; ++it) {
                const Vec<N> fm = rhs(ym);
                double dg = 0.0;
                for (std::size_t i = 0; i < N; ++i) dg += ev.grad[i] * fm[i];
                dg *= h;
                if (dg == 0.0 || !std::isfinite(dg)) break;
                const double tp = th - gm / dg;
                if (!(tp >= 0.0 && tp <= 1.0)) break;
                const Vec<N> yp = seg.at_theta(tp);
                const double gp = ev.value(yp);
                if (!(std::abs(gp) < std::abs(gm))) break;
                th = tp;
                ym = yp;
                gm = gp;
            }
            const double tm = t + th * h;
            if (ev.guard && !ev.guard(ym)) continue;
            hits.push_back({e, tm, ym, std::abs(gm)});
        }
        std::sort(hits.begin(), hits.end(),
                  [](const EventHit<N>& a, const EventHit<N>& b) { return a.t < b.t; });

        bool stop = false;
        double t_end = t1;
        Vec<N> y_end = y1;
        for (const auto& hit : hits) {
            sol.events.push_back(hit);
            if (events[hit.index].terminal) {
                stop = true;
                t_end = hit.t;
                y_end = hit.state;
                break;
            }
        }

        sol.dense.push_back(seg);
        sol.t.push_back(t_end);
        sol.y.push_back(y_end);
        if (stop) {
            sol.terminated_by_event = true;
            return sol;
        }
        t = t1;
        y = y1;
        k1 = k7;
        g_prev = g_new;
        h = hnew;
    }
}

}  // namespace turnpike::detail
