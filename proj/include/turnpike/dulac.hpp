#pragma once

#include <limits>
#include <string>

#include "turnpike/entry_exit.hpp"
#include "turnpike/integrator.hpp"

namespace turnpike {

struct DulacDiagnostics {
    double min_z = 0.0;
    double z_at_x0 = 0.0;       // z where the trajectory crosses x = 0
    double t_at_x0 = 0.0;
    double t_exit = 0.0;
    long accepted_steps = 0;
    long rejected_steps = 0;
    double max_event_residual = 0.0;
    int x0_crossings = 0;
};

struct DulacResult {
    double x_out = 0.0;
    DulacDiagnostics diagnostics;
};

/// Raised when the trajectory leaves I before returning to y = delta.
class EntryExitFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Numerical Dulac map Sigma_in -> Sigma_out in the (x, z) formulation: start
/// at (x_in, -1/log delta), stop when z returns to that value with x < 0.
[[nodiscard]] DulacResult dulac_map_numeric(const SlowFastModel& model, double x_in, double eps,
                                            const IntegratorConfig& config = {});

/// Same run, returning the full trajectory (for chart overlays).
[[nodiscard]] Trajectory dulac_trajectory(const SlowFastModel& model, double x_in, double eps,
                                          const IntegratorConfig& config = {});

struct LogYAtTurningPoint {
    double numeric = 0.0;    // -1/z at the x = 0 crossing, i.e. log y
    double predicted = 0.0;  // leading order with the remainder dropped
    double z = 0.0;
    [[nodiscard]] double relative_error() const noexcept;
};

/// log y at the first x = 0 crossing, numeric vs. the leading-order value
///   (1/eps) [ log eps + int_0^1 s/P + int_1^inf (P+s^2)/(sP)
///             + int_0^{x_in_b} (zeta+1)/(s zeta) - log x_in_b ].  n = 1 only.
[[nodiscard]] LogYAtTurningPoint log_y_at_x0(const SlowFastModel& model, double x_in, double eps,
                                             const IntegratorConfig& config = {});

struct TurningPointCrossing {
    double z = 0.0;
    double t = 0.0;
    double residual = 0.0;
};

/// z where the forward orbit of (x_start, delta) (x_start > 0) or the backward
/// orbit of (x_start, delta) (x_start < 0) first meets x = 0.
[[nodiscard]] TurningPointCrossing z_at_turning_point(const SlowFastModel& model, double x_start,
                                                      double eps, const IntegratorConfig& config = {});

struct RawXYReport {
    double min_y_before_x0 = std::numeric_limits<double>::infinity();
    bool crossed_x0 = false;
    bool returned = false;   // y came back up to delta with x < 0
    double x_out = 0.0;      // valid when returned
    long steps = 0;
    bool stalled = false;    // the integrator gave up; min_y is then the last state
    std::string failure;
};

/// The Dulac run in the original (x, y) coordinates with pure relative error
/// control on y, to show what binary64 does with the exponentially small y.
[[nodiscard]] RawXYReport raw_xy_run(const SlowFastModel& model, double x_in, double eps,
                                     const IntegratorConfig& config = {});

}  // namespace turnpike
