#pragma once

#include <string>
#include <vector>

#include "turnpike/dulac.hpp"

namespace turnpike {

/// Parallelism cap from TURNPIKE_THREADS: unset -> -1 (runtime default),
/// 0 -> serial reference path, N > 0 -> at most N threads.
[[nodiscard]] int configured_threads();

/// n equispaced points of [lo, hi] (n >= 2; n == 1 gives the midpoint).
[[nodiscard]] std::vector<double> linspace(double lo, double hi, int n);

struct DulacCell {
    double eps = 0.0;
    double x_in = 0.0;
    double x_out_numeric = 0.0;
    double x_out_theory = 0.0;
    double abs_error = 0.0;
    bool failed = false;
    std::string failure;
    DulacDiagnostics diagnostics;
};

/// Cells ordered eps-major, x_in-minor. Per-cell failures are flagged, never thrown.
[[nodiscard]] std::vector<DulacCell> dulac_sweep_serial(const SlowFastModel& model,
                                                        const std::vector<double>& eps_list,
                                                        const std::vector<double>& x_grid,
                                                        const IntegratorConfig& config = {});

/// OpenMP version of dulac_sweep_serial; results are identical cell for cell.
[[nodiscard]] std::vector<DulacCell> dulac_sweep_parallel(const SlowFastModel& model,
                                                          const std::vector<double>& eps_list,
                                                          const std::vector<double>& x_grid,
                                                          const IntegratorConfig& config = {},
                                                          int threads = -1);

/// Dispatch on configured_threads().
[[nodiscard]] std::vector<DulacCell> dulac_sweep(const SlowFastModel& model,
                                                 const std::vector<double>& eps_list,
                                                 const std::vector<double>& x_grid,
                                                 const IntegratorConfig& config = {});

struct Nge2Cell {
    double eps = 0.0;
    double z_in = 0.0;   // numeric, forward from (x_in, delta)
    double z_out = 0.0;  // numeric, backward from (x_out, delta)
    double z_in_predicted = 0.0;
    double z_out_predicted = 0.0;
    double rel_error_in = 0.0;
    double rel_error_out = 0.0;
    double max_event_residual = 0.0;
    bool failed = false;
    std::string failure;
};

[[nodiscard]] std::vector<Nge2Cell> nge2_sweep(const SlowFastModel& model, double x_in, double x_out,
                                               const std::vector<double>& eps_list,
                                               const IntegratorConfig& config = {}, int threads = -2);

}  // namespace turnpike
