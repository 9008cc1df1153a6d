#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "turnpike/detail/dopri5.hpp"
#include "turnpike/model.hpp"

namespace turnpike {

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double event_tol = 1e-13;
    long max_steps = 2'000'000;
    // Time cap; 0 selects 100 / eps^{2n}, which covers the O(eps^{-2n})
    // passage through the inner region with ample margin.
    double max_time = 0.0;
};

enum class EventKind { x_crosses_zero, y_reaches_delta_with_x_negative, x_reaches_value, z_reaches_value };
enum class Direction { up, down, any };

struct EventSpec {
    EventKind kind = EventKind::x_crosses_zero;
    Direction direction = Direction::any;
    bool terminal = false;
    double value = 0.0;  // target for x_reaches_value / z_reaches_value
};

struct TrajectoryNode {
    double t = 0.0;
    double x = 0.0;
    double z = 0.0;
};

struct RecordedEvent {
    EventSpec spec;
    double t = 0.0;
    StateXZ state;
    double residual = 0.0;  // |event function| at the reported state
};

enum class TimeDirection { forward, backward };

/// Solution of the (x, z) system. For backward runs t is elapsed reversed time.
class Trajectory {
public:
    Trajectory(detail::Solution<2> sol, std::vector<EventSpec> specs, double eps);

    [[nodiscard]] const std::vector<TrajectoryNode>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<RecordedEvent>& events() const noexcept { return events_; }
    [[nodiscard]] const std::vector<detail::DenseSegment<2>>& dense() const noexcept { return dense_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }
    [[nodiscard]] bool terminated_by_event() const noexcept { return terminated_; }
    [[nodiscard]] long accepted_steps() const noexcept { return accepted_; }
    [[nodiscard]] long rejected_steps() const noexcept { return rejected_; }

    /// Dense-output state at time t within the integrated range.
    [[nodiscard]] StateXZ at(double t) const;
    [[nodiscard]] const TrajectoryNode& back() const { return nodes_.back(); }
    /// First recorded event of the given kind, if any.
    [[nodiscard]] std::optional<RecordedEvent> first(EventKind kind) const;

private:
    std::vector<TrajectoryNode> nodes_;
    std::vector<detail::DenseSegment<2>> dense_;
    std::vector<RecordedEvent> events_;
    double eps_;
    bool terminated_;
    long accepted_;
    long rejected_;
};

/// Thrown when the integrator cannot continue; carries the last state.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double t, StateXZ last)
        : NumericalError(what), t_(t), last_(last) {}
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] StateXZ last_state() const noexcept { return last_; }

private:
    double t_;
    StateXZ last_;
};

/// Integrate the (x, z) system from `initial` (its eps field selects the
/// member of the family) until a terminal event fires. Steps that would make
/// z negative are rejected and retried with a smaller step.
[[nodiscard]] Trajectory integrate(const SlowFastModel& model, StateXZ initial,
                                   const std::vector<EventSpec>& events,
                                   const IntegratorConfig& config,
                                   TimeDirection direction = TimeDirection::forward);

[[nodiscard]] double default_max_time(const SlowFastModel& model, double eps);

}  // namespace turnpike
