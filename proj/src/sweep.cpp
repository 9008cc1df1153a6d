#include "turnpike/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "turnpike/entry_exit.hpp"

namespace turnpike {
namespace {

struct Theory {
    double x_out = 0.0;
    std::optional<std::string> failure;
};

Theory theory_at(const SlowFastModel& model, double x_in) {
    try {
        return {solve_delta0_n1(model, x_in).x_out, std::nullopt};
    } catch (const std::exception& e) {
        return {0.0, std::string("theory: ") + e.what()};
    }
}

DulacCell run_cell(const SlowFastModel& model, double eps, double x_in, const Theory& th,
                   const IntegratorConfig& config) {
    DulacCell c;
    c.eps = eps;
    c.x_in = x_in;
    c.x_out_theory = th.x_out;
    if (th.failure) {
        c.failed = true;
        c.failure = *th.failure;
    }
    try {
        const DulacResult r = dulac_map_numeric(model, x_in, eps, config);
        c.x_out_numeric = r.x_out;
        c.diagnostics = r.diagnostics;
        c.abs_error = std::abs(r.x_out - th.x_out);
    } catch (const std::exception& e) {
        c.failed = true;
        c.failure = std::string("integration: ") + e.what();
        c.x_out_numeric = std::nan("");
        c.abs_error = std::nan("");
    }
    return c;
}

template <class F>
void for_each_index(std::size_t n, int threads, F&& body) {
#ifdef _OPENMP
    if (threads != 0) {
        const int nt = threads > 0 ? threads : omp_get_max_threads();
        const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)threads;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace

int configured_threads() {
    const char* env = std::getenv("TURNPIKE_THREADS");
    if (env == nullptr || *env == '\0') return -1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) return -1;
    return static_cast<int>(v);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    if (n <= 0) return out;
    if (n == 1) return {0.5 * (lo + hi)};
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
    return out;
}

std::vector<DulacCell> dulac_sweep_serial(const SlowFastModel& model, const std::vector<double>& eps_list,
                                          const std::vector<double>& x_grid, const IntegratorConfig& config) {
    std::vector<Theory> theory;
    theory.reserve(x_grid.size());
    for (double x : x_grid) theory.push_back(theory_at(model, x));
    std::vector<DulacCell> cells;
    cells.reserve(eps_list.size() * x_grid.size());
    for (double eps : eps_list)
        for (std::size_t j = 0; j < x_grid.size(); ++j)
            cells.push_back(run_cell(model, eps, x_grid[j], theory[j], config));
    return cells;
}

std::vector<DulacCell> dulac_sweep_parallel(const SlowFastModel& model, const std::vector<double>& eps_list,
                                            const std::vector<double>& x_grid, const IntegratorConfig& config,
                                            int threads) {
    const std::size_t nx = x_grid.size();
    std::vector<Theory> theory(nx);
    for_each_index(nx, threads, [&](std::size_t j) { theory[j] = theory_at(model, x_grid[j]); });
    std::vector<DulacCell> cells(eps_list.size() * nx);
    for_each_index(cells.size(), threads, [&](std::size_t k) {
        const std::size_t i = k / nx;
        const std::size_t j = k % nx;
        cells[k] = run_cell(model, eps_list[i], x_grid[j], theory[j], config);
    });
    return cells;
}

std::vector<DulacCell> dulac_sweep(const SlowFastModel& model, const std::vector<double>& eps_list,
                                   const std::vector<double>& x_grid, const IntegratorConfig& config) {
    const int threads = configured_threads();
    if (threads == 0) return dulac_sweep_serial(model, eps_list, x_grid, config);
    return dulac_sweep_parallel(model, eps_list, x_grid, config, threads);
}

std::vector<Nge2Cell> nge2_sweep(const SlowFastModel& model, double x_in, double x_out,
                                 const std::vector<double>& eps_list, const IntegratorConfig& config,
                                 int threads) {
    if (threads == -2) threads = configured_threads();
    std::vector<Nge2Cell> cells(eps_list.size());
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        Nge2Cell& c = cells[i];
        c.eps = eps_list[i];
        try {
            const DelayPrediction pred = predict_delay_nge2(model.p, c.eps);
            c.z_in_predicted = pred.z_in;
            c.z_out_predicted = pred.z_out;
            const TurningPointCrossing fwd = z_at_turning_point(model, x_in, c.eps, config);
            const TurningPointCrossing bwd = z_at_turning_point(model, x_out, c.eps, config);
            c.z_in = fwd.z;
            c.z_out = bwd.z;
            c.rel_error_in = std::abs(c.z_in - c.z_in_predicted) / c.z_in_predicted;
            c.rel_error_out = std::abs(c.z_out - c.z_out_predicted) / c.z_out_predicted;
            c.max_event_residual = std::max(fwd.residual, bwd.residual);
        } catch (const std::exception& e) {
            c.failed = true;
            c.failure = e.what();
        }
    });
    return cells;
}

}  // namespace turnpike
