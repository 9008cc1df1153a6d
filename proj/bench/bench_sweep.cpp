// Serial vs OpenMP timing of the Dulac sweep on a dense DDR grid.
// Usage: bench_sweep [points] [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "turnpike/entry_exit.hpp"
#include "turnpike/sweep.hpp"

using namespace turnpike;

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int points = argc > 1 ? std::atoi(argv[1]) : 200;
    const int threads = argc > 2 ? std::atoi(argv[2]) : -1;
    const auto model = make_ddr_model();
    const std::vector<double> eps = {0.01, 0.005, 0.002, 0.001};
    const auto grid = linspace(model.entry.lo, model.entry.hi, points);

    std::vector<DulacCell> serial, parallel;
    const double ts = seconds([&] { serial = dulac_sweep_serial(model, eps, grid); });
    const double tp = seconds([&] { parallel = dulac_sweep_parallel(model, eps, grid, {}, threads); });

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < serial.size(); ++i)
        mismatches += serial[i].x_out_numeric != parallel[i].x_out_numeric || serial[i].failed != parallel[i].failed;

    std::printf("cells %zu  serial %.3f s  parallel %.3f s  speedup %.2fx  mismatches %zu\n", serial.size(), ts, tp,
                ts / tp, mismatches);
    return mismatches == 0 ? 0 : 1;
}
