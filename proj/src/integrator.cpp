#include "turnpike/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace turnpike {
namespace {

detail::Crossing to_crossing(Direction d) {
    switch (d) {
        case Direction::up: return detail::Crossing::up;
        case Direction::down: return detail::Crossing::down;
        default: return detail::Crossing::any;
    }
}

detail::EventFn<2> to_event_fn(const EventSpec& spec, double section_z) {
    detail::EventFn<2> fn;
    fn.direction = to_crossing(spec.direction);
    fn.terminal = spec.terminal;
    switch (spec.kind) {
        case EventKind::x_crosses_zero:
            fn.value = [](const detail::Vec<2>& s) { return s[0]; };
            fn.grad = {1.0, 0.0};
            break;
        case EventKind::x_reaches_value:
            fn.value = [v = spec.value](const detail::Vec<2>& s) { return s[0] - v; };
            fn.grad = {1.0, 0.0};
            break;
        case EventKind::z_reaches_value:
            fn.value = [v = spec.value](const detail::Vec<2>& s) { return s[1] - v; };
            fn.grad = {0.0, 1.0};
            break;
        case EventKind::y_reaches_delta_with_x_negative:
            // y = delta  <=>  z = -1/log(delta); compared in z so e^{-1/z} is never formed.
            fn.value = [section_z](const detail::Vec<2>& s) { return s[1] - section_z; };
            fn.grad = {0.0, 1.0};
            fn.guard = [](const detail::Vec<2>& s) { return s[0] < 0.0; };
            break;
    }
    return fn;
}

}  // namespace

Trajectory::Trajectory(detail::Solution<2> sol, std::vector<EventSpec> specs, double eps)
    : dense_(std::move(sol.dense)),
      eps_(eps),
      terminated_(sol.terminated_by_event),
      accepted_(sol.accepted),
      rejected_(sol.rejected) {
    nodes_.reserve(sol.t.size());
    for (std::size_t i = 0; i < sol.t.size(); ++i) nodes_.push_back({sol.t[i], sol.y[i][0], sol.y[i][1]});
    events_.reserve(sol.events.size());
    for (const auto& hit : sol.events)
        events_.push_back({specs.at(hit.index), hit.t, {hit.state[0], hit.state[1], eps}, hit.residual});
}

StateXZ Trajectory::at(double t) const {
    if (dense_.empty()) return {nodes_.front().x, nodes_.front().z, eps_};
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double v, const TrajectoryNode& n) { return v < n.t; });
    std::size_t seg = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    seg = std::min(seg, dense_.size() - 1);
    const auto s = dense_[seg].at(t);
    return {s[0], s[1], eps_};
}

std::optional<RecordedEvent> Trajectory::first(EventKind kind) const {
    for (const auto& e : events_)
        if (e.spec.kind == kind) return e;
    return std::nullopt;
}

double default_max_time(const SlowFastModel& model, double eps) {
    if (!(eps > 0.0)) return std::numeric_limits<double>::infinity();
    return 100.0 * std::pow(eps, -2.0 * model.n());
}

Trajectory integrate(const SlowFastModel& model, StateXZ initial, const std::vector<EventSpec>& events,
                     const IntegratorConfig& config, TimeDirection direction) {
    if (!(initial.z >= 0.0)) throw PreconditionError("integrate: initial z must be >= 0");
    if (!(config.rel_tol > 0.0 && config.abs_tol > 0.0 && config.event_tol > 0.0))
        throw PreconditionError("integrate: tolerances must be positive");

    const double eps = initial.eps;
    const double sign = direction == TimeDirection::forward ? 1.0 : -1.0;
    auto rhs = [&model, eps, sign](const detail::Vec<2>& s) {
        const Derivative2 d = vector_field_xz(model, {s[0], s[1], eps});
        return detail::Vec<2>{sign * d.dx, sign * d.dw};
    };
    auto admissible = [](const detail::Vec<2>& s) { return s[1] >= 0.0; };

    detail::StepControl ctl;
    ctl.rel_tol = config.rel_tol;
    ctl.abs_tol = config.abs_tol;
    ctl.max_step = config.max_step;
    ctl.event_tol = config.event_tol;
    ctl.max_steps = config.max_steps;
    ctl.max_time = config.max_time > 0.0 ? config.max_time : default_max_time(model, eps);

    std::vector<detail::EventFn<2>> fns;
    fns.reserve(events.size());
    for (const auto& e : events) fns.push_back(to_event_fn(e, model.section_z()));

    try {
        auto sol = detail::solve<2>(rhs, {initial.x, initial.z}, fns, ctl, admissible);
        return Trajectory(std::move(sol), events, eps);
    } catch (const detail::IntegrationFailure<2>& f) {
        throw IntegrationError(f.what(), f.t(), {f.state()[0], f.state()[1], eps});
    }
}

}  // namespace turnpike
