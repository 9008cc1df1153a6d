#include "turnpike/dulac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "turnpike/detail/dopri5.hpp"
#include "turnpike/quadrature.hpp"

namespace turnpike {
namespace {

std::vector<EventSpec> dulac_events(const SlowFastModel& model) {
    return {
        {EventKind::x_crosses_zero, Direction::down, false, 0.0},
        {EventKind::y_reaches_delta_with_x_negative, Direction::up, true, 0.0},
        {EventKind::x_reaches_value, Direction::down, true, model.domain.lo},
        {EventKind::x_reaches_value, Direction::up, true, std::max(model.domain.hi, model.entry.hi) + 1.0},
    };
}

void check_dulac_pre(const SlowFastModel& model, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("dulac: eps must be positive");
    if (!model.p.is_negative_definite()) throw PreconditionError("dulac: P must be negative definite");
}

}  // namespace

Trajectory dulac_trajectory(const SlowFastModel& model, double x_in, double eps,
                            const IntegratorConfig& config) {
    check_dulac_pre(model, eps);
    return integrate(model, {x_in, model.section_z(), eps}, dulac_events(model), config);
}

DulacResult dulac_map_numeric(const SlowFastModel& model, double x_in, double eps,
                              const IntegratorConfig& config) {
    const Trajectory tr = dulac_trajectory(model, x_in, eps, config);
    const auto ret = tr.first(EventKind::y_reaches_delta_with_x_negative);
    if (!ret)
        throw EntryExitFailure("dulac: trajectory from x_in = " + std::to_string(x_in) +
                               " left I before returning to y = delta (eps = " + std::to_string(eps) + ")");
    DulacResult r;
    r.x_out = ret->state.x;
    auto& d = r.diagnostics;
    d.t_exit = ret->t;
    d.accepted_steps = tr.accepted_steps();
    d.rejected_steps = tr.rejected_steps();
    d.min_z = std::numeric_limits<double>::infinity();
    for (const auto& n : tr.nodes()) d.min_z = std::min(d.min_z, n.z);
    for (const auto& e : tr.events()) {
        d.max_event_residual = std::max(d.max_event_residual, e.residual);
        if (e.spec.kind == EventKind::x_crosses_zero) {
            if (d.x0_crossings == 0) {
                d.z_at_x0 = e.state.z;
                d.t_at_x0 = e.t;
            }
            ++d.x0_crossings;
        }
    }
    return r;
}

double LogYAtTurningPoint::relative_error() const noexcept {
    return std::abs(numeric - predicted) / std::abs(predicted);
}

LogYAtTurningPoint log_y_at_x0(const SlowFastModel& model, double x_in, double eps,
                               const IntegratorConfig& config) {
    if (model.n() != 1) throw PreconditionError("log_y_at_x0: requires n = 1");
    const TurningPointCrossing c = z_at_turning_point(model, x_in, eps, config);
    LogYAtTurningPoint out;
    out.z = c.z;
    out.numeric = -1.0 / c.z;
    const double xb = base_point(model, x_in, SectionSide::in);
    const double bracket = std::log(eps) + fast_regular_positive(model.p, 1e-12) +
                           slow_regular_integral(model.zeta, 0.0, xb, 1e-12) - std::log(xb);
    out.predicted = bracket / eps;
    return out;
}

TurningPointCrossing z_at_turning_point(const SlowFastModel& model, double x_start, double eps,
                                        const IntegratorConfig& config) {
    check_dulac_pre(model, eps);
    if (x_start == 0.0) throw PreconditionError("z_at_turning_point: x_start must be nonzero");
    const bool forward = x_start > 0.0;
    // Backward in time from the exit side x increases toward 0.
    const std::vector<EventSpec> events = {
        {EventKind::x_crosses_zero, forward ? Direction::down : Direction::up, true, 0.0},
        {EventKind::x_reaches_value, Direction::down, true, std::min(model.domain.lo, x_start) - 1.0},
        {EventKind::x_reaches_value, Direction::up, true, std::max(model.domain.hi, x_start) + 1.0},
    };
    const Trajectory tr = integrate(model, {x_start, model.section_z(), eps}, events, config,
                                    forward ? TimeDirection::forward : TimeDirection::backward);
    const auto hit = tr.first(EventKind::x_crosses_zero);
    if (!hit) throw EntryExitFailure("z_at_turning_point: orbit did not reach x = 0");
    return {hit->state.z, hit->t, hit->residual};
}

RawXYReport raw_xy_run(const SlowFastModel& model, double x_in, double eps,
                       const IntegratorConfig& config) {
    check_dulac_pre(model, eps);
    auto rhs = [&model, eps](const detail::Vec<2>& s) {
        const Derivative2 d = vector_field_xy(model, {s[0], s[1], eps});
        return detail::Vec<2>{d.dx, d.dw};
    };
    std::vector<detail::EventFn<2>> events(3);
    events[0].value = [](const detail::Vec<2>& s) { return s[0]; };
    events[0].grad = {1.0, 0.0};
    events[0].direction = detail::Crossing::down;
    const double delta = model.delta;
    events[1].value = [delta](const detail::Vec<2>& s) { return s[1] - delta; };
    events[1].grad = {0.0, 1.0};
    events[1].direction = detail::Crossing::up;
    events[1].terminal = true;
    events[1].guard = [](const detail::Vec<2>& s) { return s[0] < 0.0; };
    const double lo = model.domain.lo;
    events[2].value = [lo](const detail::Vec<2>& s) { return s[0] - lo; };
    events[2].grad = {1.0, 0.0};
    events[2].direction = detail::Crossing::down;
    events[2].terminal = true;

    detail::StepControl ctl;
    ctl.rel_tol = config.rel_tol;
    // Pure relative control: resolve y down to the subnormal range.
    ctl.abs_tol = 1e4 * std::numeric_limits<double>::denorm_min();
    ctl.event_tol = config.event_tol;
    ctl.max_steps = config.max_steps;
    ctl.max_time = config.max_time > 0.0 ? config.max_time : default_max_time(model, eps);

    RawXYReport rep;
    detail::Solution<2> sol;
    try {
        sol = detail::solve<2>(rhs, {x_in, model.delta}, events, ctl,
                               [](const detail::Vec<2>& s) { return s[1] >= 0.0; });
    } catch (const detail::IntegrationFailure<2>& f) {
        // A raw run that stalls is itself a possible outcome; report what we have.
        rep.stalled = true;
        rep.failure = f.what();
        rep.min_y_before_x0 = f.state()[0] > 0.0 ? f.state()[1] : rep.min_y_before_x0;
        return rep;
    }
    rep.steps = sol.accepted;
    double t_x0 = std::numeric_limits<double>::infinity();
    for (const auto& e : sol.events) {
        if (e.index == 0 && !rep.crossed_x0) {
            rep.crossed_x0 = true;
            t_x0 = e.t;
        }
        if (e.index == 1) {
            rep.returned = true;
            rep.x_out = e.state[0];
        }
    }
    rep.min_y_before_x0 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sol.t.size() && sol.t[i] <= t_x0; ++i)
        rep.min_y_before_x0 = std::min(rep.min_y_before_x0, sol.y[i][1]);
    return rep;
}

}  // namespace turnpike
