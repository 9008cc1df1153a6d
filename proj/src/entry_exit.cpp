#include "turnpike/entry_exit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "turnpike/detail/dopri5.hpp"
#include "turnpike/errors.hpp"

namespace turnpike {

BasePointMap::BasePointMap(const SlowFastModel& model, double tol, double x_floor)
    : model_(&model), tol_(tol), x_floor_(x_floor) {}

std::vector<BasePointMap::FiberSample> BasePointMap::fiber(double x0, double y0, double y1) const {
    if (std::abs(x0) < x_floor_) throw PreconditionError("fiber: start too close to x = 0");
    const double dir = y1 >= y0 ? 1.0 : -1.0;
    std::vector<FiberSample> out;
    if (y1 == y0) {
        out.push_back({y0, x0});
        return out;
    }
    const auto& g = model_->g;
    // state (x, y); the fiber is parametrized by |y - y0|
    auto rhs = [&g, dir](const detail::Vec<2>& s) {
        return detail::Vec<2>{-dir * g(s[0], s[1], 0.0) / s[0], dir};
    };
    const double sign = x0 > 0.0 ? 1.0 : -1.0;
    std::vector<detail::EventFn<2>> events(2);
    events[0].value = [y1](const detail::Vec<2>& s) { return s[1] - y1; };
    events[0].grad = {0.0, 1.0};
    events[0].direction = dir > 0 ? detail::Crossing::up : detail::Crossing::down;
    events[0].terminal = true;
    const double floor = x_floor_;
    events[1].value = [sign, floor](const detail::Vec<2>& s) { return sign * s[0] - floor; };
    events[1].grad = {sign, 0.0};
    events[1].direction = detail::Crossing::down;
    events[1].terminal = true;

    detail::StepControl ctl;
    ctl.rel_tol = tol_;
    ctl.abs_tol = tol_;
    ctl.event_tol = 1e-15;
    ctl.max_time = 2.0 * std::abs(y1 - y0);
    auto sol = detail::solve<2>(rhs, {x0, y0}, events, ctl, [](const detail::Vec<2>&) { return true; });
    if (sol.events.empty() || sol.events.back().index != 0)
        throw NumericalError("base point undefined: fiber from x = " + std::to_string(x0) +
                             " reaches the turning point before y = " + std::to_string(y1));
    out.reserve(sol.t.size());
    for (const auto& s : sol.y) out.push_back({s[1], s[0]});
    out.back().y = y1;
    return out;
}

double BasePointMap::base_point(double x_start, SectionSide side) const {
    if (side == SectionSide::in && !(x_start > 0.0))
        throw PreconditionError("base_point: entry point must have x > 0");
    if (side == SectionSide::out && !(x_start < 0.0))
        throw PreconditionError("base_point: exit point must have x < 0");
    const double xb = fiber(x_start, model_->delta, 0.0).back().x;
    const Interval I = model_->domain;
    const bool ok = side == SectionSide::in ? (xb > 0.0 && xb <= I.hi) : (xb < 0.0 && xb >= I.lo);
    if (!ok)
        throw NumericalError("base_point: x^b = " + std::to_string(xb) + " outside the admissible part of I");
    return xb;
}

double BasePointMap::section_point(double x_base) const {
    return fiber(x_base, 0.0, model_->delta).back().x;
}

double base_point(const SlowFastModel& model, double x_start, SectionSide side) {
    return BasePointMap(model).base_point(x_start, side);
}

EntryExitResult solve_delta0_n1(const SlowFastModel& model, double x_in, double tol) {
    if (model.n() != 1) throw PreconditionError("solve_delta0_n1: requires n = 1");
    if (!model.p.is_negative_definite()) throw PreconditionError("solve_delta0_n1: P must be negative");
    if (!model.entry.contains(x_in))
        throw PreconditionError("solve_delta0_n1: x_in = " + std::to_string(x_in) + " not in I_in");

    const BasePointMap fibers(model);
    EntryExitResult r;
    r.x_in = x_in;
    r.x_in_b = fibers.base_point(x_in, SectionSide::in);

    const double fast = pv_fast_quadratic(model.p.lambda()[0], model.p.lambda()[1]);
    const double quad_tol = std::min(1e-12, tol);
    auto relation = [&](double xb_out) {
        return pv_slow(model.zeta, xb_out, r.x_in_b, quad_tol) + fast;
    };

    const double b_lo = fibers.base_point(model.exit.lo, SectionSide::out);
    const double b_hi = fibers.base_point(model.exit.hi, SectionSide::out);
    const double w = std::abs(b_hi - b_lo);
    const double lo = std::max(std::min(b_lo, b_hi) - 0.1 * w, model.domain.lo);
    const double hi = std::min(std::max(b_lo, b_hi) + 0.1 * w, -1e-6);
    const auto bracket = scan_for_bracket(relation, lo, hi, 64);
    if (!bracket)
        throw NumericalError("solve_delta0_n1: no root of the entry-exit relation in the base-point "
                             "image of I_out for x_in = " + std::to_string(x_in));
    const RootResult root = find_root(relation, bracket->lo, bracket->hi, 1e-15);
    r.x_out_b = root.x;
    r.relation_residual = root.fx;
    r.x_out = fibers.section_point(r.x_out_b);
    return r;
}

DdrClosedForm ddr_delta0_closed_form(double beta, double lambda0, double lambda1, double delta,
                                     double x_in) {
    const double disc = -4.0 * lambda0 - lambda1 * lambda1;
    if (!(disc > 0.0)) throw PreconditionError("ddr closed form: need 4 lambda0 + lambda1^2 < 0");
    if (!(beta > 0.0)) throw PreconditionError("ddr closed form: beta must be positive");
    if (!(x_in * x_in > 2.0 * delta))
        throw PreconditionError("ddr closed form: need x_in^2 > 2 delta (fiber must reach y = 0)");
    DdrClosedForm c;
    c.K = -pv_fast_quadratic(lambda0, lambda1);
    const double eK = std::exp(c.K);
    c.x_in_b = std::sqrt(x_in * x_in - 2.0 * delta);
    const double denom = beta * (eK + 1.0) * c.x_in_b - 1.0;
    if (!(denom < 0.0))
        throw PreconditionError("ddr closed form: x_in_b >= 1/(beta (e^K + 1)), no exit point");
    c.x_out_b = eK * c.x_in_b / denom;
    c.x_out = -std::sqrt(2.0 * delta + c.x_out_b * c.x_out_b);
    return c;
}

DelayPrediction predict_delay_nge2(const PolyP& p, double eps, double tol) {
    if (p.n() < 2) throw PreconditionError("predict_delay_nge2: requires n >= 2");
    if (!p.is_negative_definite()) throw PreconditionError("predict_delay_nge2: P must be negative");
    if (!(eps > 0.0)) throw PreconditionError("predict_delay_nge2: eps must be positive");
    DelayPrediction d;
    d.n = p.n();
    d.positive_half = half_line_integral(p, Side::positive, tol);
    d.negative_half = half_line_integral(p, Side::negative, tol);
    d.whole_line_integral = d.positive_half + d.negative_half;
    d.z_in_leading = 1.0 / (-d.positive_half);
    d.z_out_leading = 1.0 / d.negative_half;
    const double scale = std::pow(eps, 2 * p.n() - 1);
    d.z_in = scale * d.z_in_leading;
    d.z_out = scale * d.z_out_leading;
    return d;
}

CanardSolution solve_canard_parameter(const PolyP& p, int l, double target, double tol) {
    if (p.n() < 2) throw PreconditionError("solve_canard_parameter: requires n >= 2");
    if (l < 0 || l >= 2 * p.n()) throw PreconditionError("solve_canard_parameter: index out of range");
    if (l % 2 == 0)
        throw PreconditionError("solve_canard_parameter: l must be odd (even l may have zero slope)");
    if (!p.is_negative_definite()) throw PreconditionError("solve_canard_parameter: P must be negative");

    auto residual = [&](double mu) {
        const PolyP q = p.with_coefficient(l, mu);
        if (!q.is_negative_definite())
            throw NumericalError("solve_canard_parameter: left the negative-definite region");
        return whole_line_moment(q, 1, 1, 0.1 * tol) - target;
    };

    const double mu0 = p.lambda()[static_cast<std::size_t>(l)];
    const double f0 = residual(mu0);
    double mu = mu0;
    if (f0 != 0.0) {
        // The slope is negative near odd-zero bases; walk with the Newton
        // sign and widen until the residual changes sign.
        const double slope0 = -whole_line_moment(p, 1 + l, 2, 0.1 * tol);
        if (std::abs(slope0) < 1e-10)
            throw NumericalError("solve_canard_parameter: degenerate slope at the start point");
        double step = -f0 / slope0;
        double a = mu0;
        double fa = f0;
        std::optional<Bracket> br;
        for (int it = 0; it < 60 && !br; ++it) {
            const double b = mu0 + step;
            const double fb = residual(b);
            if ((fa < 0.0) != (fb < 0.0) || fb == 0.0)
                br = Bracket{std::min(a, b), std::max(a, b)};
            a = b;
            fa = fb;
            step *= 1.5;
        }
        if (!br) throw NumericalError("solve_canard_parameter: could not bracket a root");
        mu = find_root(residual, br->lo, br->hi, 1e-15).x;
    }

    const PolyP q = p.with_coefficient(l, mu);
    CanardSolution s{l, mu, q, whole_line_moment(q, 1, 1, 0.1 * tol), 0.0};
    s.slope = -whole_line_moment(q, 1 + l, 2, 0.1 * tol);
    if (std::abs(s.slope) < 1e-8)
        throw NumericalError("solve_canard_parameter: slope vanishes at the solution (degenerate)");
    return s;
}

double classical_delta0(const Integrand& h_over_f, double x_in, Bracket bracket, double tol) {
    auto sdi = [&](double x_out) { return classical_sdi(h_over_f, x_in, x_out, 0.01 * tol); };
    const double fa = sdi(bracket.lo);
    const double fb = sdi(bracket.hi);
    if ((fa < 0.0) == (fb < 0.0) && fa != 0.0 && fb != 0.0)
        throw NumericalError("classical_delta0: no sign change in bracket");
    return find_root(sdi, bracket.lo, bracket.hi, tol).x;
}

}  // namespace turnpike
