#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace turnpike::cli {

enum ExitCode : int { pass = 0, numeric_fail = 1, usage = 2 };

struct Common {
    std::string model_path;
    std::optional<double> tol;
};

struct PvCheckOptions {
    Common common;
    std::optional<double> lambda0;
    std::optional<double> lambda1;
};

struct Delta0Options {
    Common common;
    std::vector<double> x_in;  // empty: equispaced grid over I_in
    int grid = 25;
};

struct SweepOptions {
    Common common;
    std::vector<double> eps;
    std::vector<double> x_in;
    int grid = 25;
    double max_relative_residual = 0.2;  // converge only
};

struct Nge2Options {
    Common common;
    std::vector<double> eps;
    std::optional<double> x_in;   // default: midpoint of I_in
    std::optional<double> x_out;  // default: midpoint of I_out
};

struct ChartViewOptions {
    Common common;
    std::vector<double> eps;
    std::optional<double> x_in;
};

struct CanardOptions {
    Common common;
    int index = 1;
    double target = 0.0;
    double eps = 0.02;
    double perturbation = 0.1;
    std::optional<double> x_in;
    std::optional<double> x_out;
};

struct HypothesesOptions {
    Common common;
    double eps_max = 0.01;
    int grid = 200;
};

// Each command writes CSV (or the report) to `out` and human-readable
// verdict lines to `log`; the return value is an ExitCode.
int cmd_pv_check(const PvCheckOptions& o, std::ostream& out, std::ostream& log);
int cmd_delta0(const Delta0Options& o, std::ostream& out, std::ostream& log);
int cmd_dulac(const SweepOptions& o, std::ostream& out, std::ostream& log);
int cmd_converge(const SweepOptions& o, std::ostream& out, std::ostream& log);
int cmd_nge2(const Nge2Options& o, std::ostream& out, std::ostream& log);
int cmd_chart_view(const ChartViewOptions& o, std::ostream& out, std::ostream& log);
int cmd_canard_solve(const CanardOptions& o, std::ostream& out, std::ostream& log);
int cmd_hypotheses(const HypothesesOptions& o, std::ostream& out, std::ostream& log);

/// Runs `body`, mapping PreconditionError to usage and other failures to numeric_fail.
template <class Body>
int guarded(std::ostream& log, Body&& body);

}  // namespace turnpike::cli

#include "turnpike/detail/cli_guard.hpp"
