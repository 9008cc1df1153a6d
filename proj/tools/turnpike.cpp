// turnpike: entry-exit maps for slow-fast systems with a degenerate turning point.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "turnpike/cli.hpp"

using namespace turnpike::cli;

namespace {

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &std::cout;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entry-exit maps for planar slow-fast systems with a degenerate turning point"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    std::string out_path;
    double tol = 0.0;
    app.add_option("--model", common.model_path, "Model file (key = value)");
    app.add_option("--out", out_path, "Write CSV here instead of stdout");
    auto* tol_opt = app.add_option("--tol", tol, "Tolerance (meaning depends on the command)");

    PvCheckOptions pv;
    double l0 = 0.0, l1 = 0.0;
    auto* pv_cmd = app.add_subcommand("pv-check", "Closed-form vs quadrature principal value of int s/P");
    auto* l0_opt = pv_cmd->add_option("--lambda0", l0);
    auto* l1_opt = pv_cmd->add_option("--lambda1", l1);

    Delta0Options d0;
    auto* d0_cmd = app.add_subcommand("delta0", "Limiting entry-exit map (n = 1)");
    d0_cmd->add_option("--x-in", d0.x_in, "Entry points (comma separated)")->delimiter(',');
    d0_cmd->add_option("--grid", d0.grid, "Grid size over I_in when --x-in is absent");

    SweepOptions dulac;
    auto* dulac_cmd = app.add_subcommand("dulac", "Numerical Dulac map vs the limit over an (eps, x_in) grid");
    SweepOptions conv;
    auto* conv_cmd = app.add_subcommand("converge", "Fit of the error to a eps log(1/eps) + b eps");
    for (auto [cmd, opts] : {std::pair{dulac_cmd, &dulac}, std::pair{conv_cmd, &conv}}) {
        cmd->add_option("--eps", opts->eps, "eps values (comma separated)")->delimiter(',');
        cmd->add_option("--x-in", opts->x_in, "Entry points (comma separated)")->delimiter(',');
        cmd->add_option("--grid", opts->grid, "Grid size over I_in when --x-in is absent");
    }
    conv_cmd->add_option("--max-rel-residual", conv.max_relative_residual, "Pass threshold on the fit residual");

    Nge2Options nge2;
    double nge2_in = 0.0, nge2_out = 0.0;
    auto* nge2_cmd = app.add_subcommand("nge2", "Forward/backward z at the turning point for n >= 2");
    nge2_cmd->add_option("--eps", nge2.eps)->delimiter(',');
    auto* nge2_in_opt = nge2_cmd->add_option("--x-in", nge2_in);
    auto* nge2_out_opt = nge2_cmd->add_option("--x-out", nge2_out);

    ChartViewOptions chart;
    double chart_in = 0.0;
    auto* chart_cmd = app.add_subcommand("chart-view", "Trajectory in the (x, z2) plane with the eps = 0 curve");
    chart_cmd->add_option("--eps", chart.eps)->delimiter(',');
    auto* chart_in_opt = chart_cmd->add_option("--x-in", chart_in);

    CanardOptions canard;
    double canard_in = 0.0, canard_out = 0.0;
    auto* canard_cmd = app.add_subcommand("canard-solve", "Solve int v/P = target for one coefficient");
    canard_cmd->add_option("--index", canard.index, "Coefficient index l (odd)");
    canard_cmd->add_option("--target", canard.target);
    canard_cmd->add_option("--eps", canard.eps, "eps for the gap comparison");
    canard_cmd->add_option("--perturbation", canard.perturbation, "Offset of the comparison coefficients");
    auto* canard_in_opt = canard_cmd->add_option("--x-in", canard_in);
    auto* canard_out_opt = canard_cmd->add_option("--x-out", canard_out);

    HypothesesOptions hyp;
    auto* hyp_cmd = app.add_subcommand("hypotheses", "Check the standing hypotheses on a grid");
    hyp_cmd->add_option("--eps-max", hyp.eps_max);
    hyp_cmd->add_option("--grid", hyp.grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    if (*tol_opt) common.tol = tol;
    Output out;
    if (!out_path.empty()) {
        out.file = std::make_unique<std::ofstream>(out_path);
        if (!*out.file) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return usage;
        }
        out.stream = out.file.get();
    }
    std::ostream& os = *out.stream;
    std::ostream& log = std::cerr;

    if (*pv_cmd) {
        pv.common = common;
        if (*l0_opt) pv.lambda0 = l0;
        if (*l1_opt) pv.lambda1 = l1;
        return cmd_pv_check(pv, os, log);
    }
    if (*d0_cmd) {
        d0.common = common;
        return cmd_delta0(d0, os, log);
    }
    if (*dulac_cmd) {
        dulac.common = common;
        return cmd_dulac(dulac, os, log);
    }
    if (*conv_cmd) {
        conv.common = common;
        return cmd_converge(conv, os, log);
    }
    if (*nge2_cmd) {
        nge2.common = common;
        if (*nge2_in_opt) nge2.x_in = nge2_in;
        if (*nge2_out_opt) nge2.x_out = nge2_out;
        return cmd_nge2(nge2, os, log);
    }
    if (*chart_cmd) {
        chart.common = common;
        if (*chart_in_opt) chart.x_in = chart_in;
        return cmd_chart_view(chart, os, log);
    }
    if (*canard_cmd) {
        canard.common = common;
        if (*canard_in_opt) canard.x_in = canard_in;
        if (*canard_out_opt) canard.x_out = canard_out;
        return cmd_canard_solve(canard, os, log);
    }
    hyp.common = common;
    return cmd_hypotheses(hyp, os, log);
}
