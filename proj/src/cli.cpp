#include "turnpike/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "turnpike/blowup.hpp"
#include "turnpike/csv.hpp"
#include "turnpike/dulac.hpp"
#include "turnpike/entry_exit.hpp"
#include "turnpike/fit.hpp"
#include "turnpike/model_io.hpp"
#include "turnpike/quadrature.hpp"
#include "turnpike/sweep.hpp"

namespace turnpike::cli {
namespace {

using csv::format_double;

SlowFastModel require_model(const Common& c) {
    if (c.model_path.empty()) throw PreconditionError("--model is required");
    return load_model(c.model_path);
}

IntegratorConfig integrator_config(const Common& c) {
    IntegratorConfig cfg;
    if (c.tol) {
        if (!(*c.tol > 0.0)) throw PreconditionError("--tol must be positive");
        cfg.rel_tol = cfg.abs_tol = *c.tol;
    }
    return cfg;
}

void require_eps(const std::vector<double>& eps, std::size_t min_count) {
    if (eps.size() < min_count)
        throw PreconditionError("need at least " + std::to_string(min_count) + " eps value(s), got " +
                                std::to_string(eps.size()));
    for (double e : eps)
        if (!(e > 0.0 && e < 1.0)) throw PreconditionError("eps values must lie in (0, 1)");
}

void require_n1_with_hypotheses(const SlowFastModel& m, double eps_max) {
    if (m.n() != 1) throw PreconditionError("this command needs an n = 1 model");
    const HypothesisReport h = check_hypotheses(m, eps_max, 200);
    if (!h.passed()) throw PreconditionError("model fails the standing hypotheses (run 'hypotheses')");
}

std::vector<double> entry_grid(const SlowFastModel& m, const std::vector<double>& given, int grid) {
    if (!given.empty()) {
        for (double x : given)
            if (!m.entry.contains(x)) throw PreconditionError("x_in = " + format_double(x) + " is outside I_in");
        return given;
    }
    if (grid < 1) throw PreconditionError("--grid must be positive");
    return linspace(m.entry.lo, m.entry.hi, grid);
}

double midpoint(const Interval& i) { return 0.5 * (i.lo + i.hi); }

const char* classify(double whole) {
    if (whole < 0.0) return "negative: z_in < z_out, the orbit passes x_out with y exponentially small";
    if (whole > 0.0) return "positive: z_in > z_out, the orbit returns to y = delta with x = o(1) < 0";
    return "zero: canard case, connection only under parameter tuning";
}

double gap_at(const SlowFastModel& m, double x_in, double x_out, double eps, const IntegratorConfig& cfg) {
    const double zi = z_at_turning_point(m, x_in, eps, cfg).z;
    const double zo = z_at_turning_point(m, x_out, eps, cfg).z;
    return std::abs(zi - zo);
}

SlowFastModel with_p(const SlowFastModel& m, PolyP p) {
    return SlowFastModel(std::move(p), m.zeta, m.g, m.delta, m.domain, m.entry, m.exit, m.name);
}

}  // namespace

int cmd_pv_check(const PvCheckOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        double l0 = 0.0, l1 = 0.0;
        if (o.lambda0 && o.lambda1) {
            l0 = *o.lambda0;
            l1 = *o.lambda1;
        } else if (!o.common.model_path.empty() && !o.lambda0 && !o.lambda1) {
            const SlowFastModel m = load_model(o.common.model_path);
            if (m.n() != 1) throw PreconditionError("pv-check: model must have n = 1");
            l0 = m.p.lambda()[0];
            l1 = m.p.lambda()[1];
        } else {
            throw PreconditionError("pv-check: give both --lambda0 and --lambda1, or --model");
        }
        if (!(4.0 * l0 + l1 * l1 < 0.0)) throw PreconditionError("pv-check: need 4 lambda0 + lambda1^2 < 0");
        const double tol = o.common.tol.value_or(1e-8);
        const double closed = pv_fast_quadratic(l0, l1);
        const double numeric = pv_fast_numeric(PolyP(1, {l0, l1}), std::min(1e-12, tol * 1e-2));
        const double diff = std::abs(numeric - closed);
        csv::write_header(out, {"lambda0", "lambda1", "closed_form", "numeric", "abs_diff"});
        csv::write_row(out, {l0, l1, closed, numeric, diff});
        const bool ok = diff <= tol;
        log << (ok ? "PASS" : "FAIL") << " pv-check |diff| = " << format_double(diff) << " tol = " << format_double(tol)
            << '\n';
        return ok ? pass : numeric_fail;
    });
}

int cmd_delta0(const Delta0Options& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const SlowFastModel m = require_model(o.common);
        require_n1_with_hypotheses(m, 0.01);
        const double tol = o.common.tol.value_or(1e-12);
        const auto xs = entry_grid(m, o.x_in, o.grid);
        csv::write_header(out, {"x_in", "x_in_b", "x_out_b", "x_out", "relation_residual"});
        for (double x : xs) {
            const EntryExitResult r = solve_delta0_n1(m, x, tol);
            csv::write_row(out, {r.x_in, r.x_in_b, r.x_out_b, r.x_out, r.relation_residual});
        }
        log << "delta0: " << xs.size() << " points\n";
        return static_cast<int>(pass);
    });
}

int cmd_dulac(const SweepOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        require_eps(o.eps, 1);
        const SlowFastModel m = require_model(o.common);
        require_n1_with_hypotheses(m, *std::max_element(o.eps.begin(), o.eps.end()));
        const auto xs = entry_grid(m, o.x_in, o.grid);
        const auto cells = dulac_sweep(m, o.eps, xs, integrator_config(o.common));
        csv::write_header(out, {"epsilon", "x_in", "x_out_numeric", "x_out_theory", "abs_error", "max_event_residual",
                                "failed", "failure"});
        long failures = 0;
        for (const auto& c : cells) {
            failures += c.failed ? 1 : 0;
            csv::write_row(out, {c.eps, c.x_in, c.x_out_numeric, c.x_out_theory, c.abs_error,
                                 c.diagnostics.max_event_residual, static_cast<long>(c.failed), c.failure});
        }
        log << "dulac: " << cells.size() << " cells, " << failures << " failed\n";
        return failures == 0 ? pass : numeric_fail;
    });
}

int cmd_converge(const SweepOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        require_eps(o.eps, 3);
        const SlowFastModel m = require_model(o.common);
        require_n1_with_hypotheses(m, *std::max_element(o.eps.begin(), o.eps.end()));
        const auto xs = entry_grid(m, o.x_in, o.grid);
        const auto cells = dulac_sweep(m, o.eps, xs, integrator_config(o.common));
        csv::write_header(out, {"x_in", "a", "b", "residual_norm", "relative_residual", "saturated", "pass"});
        bool all_ok = true;
        std::vector<double> err(o.eps.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            bool failed = false;
            for (std::size_t i = 0; i < o.eps.size(); ++i) {
                const auto& c = cells[i * xs.size() + j];
                failed = failed || c.failed;
                err[i] = c.abs_error;
            }
            if (failed) {
                csv::write_row(out, {xs[j], std::nan(""), std::nan(""), std::nan(""), std::nan(""), 0L, 0L});
                all_ok = false;
                continue;
            }
            const RemainderFit f = fit_remainder(o.eps, err);
            const bool ok = f.saturated || f.relative_residual < o.max_relative_residual;
            all_ok = all_ok && ok;
            csv::write_row(out, {xs[j], f.a, f.b, f.residual_norm, f.relative_residual, static_cast<long>(f.saturated),
                                 static_cast<long>(ok)});
        }
        log << (all_ok ? "PASS" : "FAIL") << " converge: relative residual threshold "
            << format_double(o.max_relative_residual) << '\n';
        return all_ok ? pass : numeric_fail;
    });
}

int cmd_nge2(const Nge2Options& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        require_eps(o.eps, 1);
        const SlowFastModel m = require_model(o.common);
        if (m.n() < 2) throw PreconditionError("nge2: model must have n >= 2");
        if (!m.p.is_negative_definite()) throw PreconditionError("nge2: P must be negative definite");
        const double x_in = o.x_in.value_or(midpoint(m.entry));
        const double x_out = o.x_out.value_or(midpoint(m.exit));
        if (!m.entry.contains(x_in)) throw PreconditionError("nge2: x_in outside I_in");
        if (!m.exit.contains(x_out)) throw PreconditionError("nge2: x_out outside I_out");
        const auto cells = nge2_sweep(m, x_in, x_out, o.eps, integrator_config(o.common));
        const DelayPrediction ref = predict_delay_nge2(m.p, o.eps.front());
        csv::write_header(out, {"epsilon", "z_in", "z_out", "z_in_predicted", "z_out_predicted", "rel_error_in",
                                "rel_error_out", "gap", "gap_predicted", "failed", "failure"});
        bool ok = true;
        const double whole = ref.whole_line_integral;
        for (const auto& c : cells) {
            ok = ok && !c.failed;
            const bool order_ok = whole < 0.0 ? c.z_in < c.z_out : whole > 0.0 ? c.z_in > c.z_out : true;
            ok = ok && (c.failed || order_ok);
            csv::write_row(out, {c.eps, c.z_in, c.z_out, c.z_in_predicted, c.z_out_predicted, c.rel_error_in,
                                 c.rel_error_out, c.z_in - c.z_out, c.z_in_predicted - c.z_out_predicted,
                                 static_cast<long>(c.failed), c.failure});
        }
        log << "whole-line integral " << format_double(whole) << ": " << classify(whole) << '\n';
        log << (ok ? "PASS" : "FAIL") << " nge2: numeric ordering of z_in, z_out "
            << (ok ? "matches" : "does not match") << " the sign of the whole-line integral\n";
        return ok ? pass : numeric_fail;
    });
}

int cmd_chart_view(const ChartViewOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        require_eps(o.eps, 1);
        const SlowFastModel m = require_model(o.common);
        require_n1_with_hypotheses(m, *std::max_element(o.eps.begin(), o.eps.end()));
        const double x_in = o.x_in.value_or(midpoint(m.entry));
        if (!m.entry.contains(x_in)) throw PreconditionError("chart-view: x_in outside I_in");
        const double xb = base_point(m, x_in, SectionSide::in);
        const IntegratorConfig cfg = integrator_config(o.common);
        csv::write_header(out, {"epsilon", "x", "z2_numeric", "z2_theory"});
        long failures = 0;
        for (double eps : o.eps) {
            try {
                const Trajectory tr = dulac_trajectory(m, x_in, eps, cfg);
                for (const XZ2& p : overlay_xz2(tr, eps)) {
                    double theory = std::nan("");
                    if (p.x > 0.0 && p.x < xb - 1e-4) theory = theoretical_z2_curve(m, xb, p.x);
                    csv::write_row(out, {eps, p.x, p.z2, theory});
                }
            } catch (const NumericalError& e) {
                ++failures;
                log << "chart-view: eps = " << format_double(eps) << " failed: " << e.what() << '\n';
            }
        }
        return failures == 0 ? pass : numeric_fail;
    });
}

int cmd_canard_solve(const CanardOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const SlowFastModel m = require_model(o.common);
        if (m.n() < 2) throw PreconditionError("canard-solve: model must have n >= 2");
        if (o.index < 0 || o.index >= m.p.degree()) throw PreconditionError("canard-solve: index out of range");
        if (o.index % 2 == 0) throw PreconditionError("canard-solve: only odd indices are supported");
        if (!(o.eps > 0.0 && o.eps < 1.0)) throw PreconditionError("canard-solve: eps must lie in (0, 1)");
        const double tol = o.common.tol.value_or(1e-8);
        const double x_in = o.x_in.value_or(midpoint(m.entry));
        const double x_out = o.x_out.value_or(midpoint(m.exit));

        const CanardSolution s = solve_canard_parameter(m.p, o.index, o.target, std::min(1e-12, tol * 1e-2));
        const IntegratorConfig cfg;
        const SlowFastModel solved = with_p(m, s.p);
        const double lam = s.lambda_l;
        const double gap = gap_at(solved, x_in, x_out, o.eps, cfg);
        const double gap_minus = gap_at(with_p(m, s.p.with_coefficient(o.index, lam - o.perturbation)), x_in, x_out,
                                        o.eps, cfg);
        const double gap_plus = gap_at(with_p(m, s.p.with_coefficient(o.index, lam + o.perturbation)), x_in, x_out,
                                       o.eps, cfg);
        csv::write_header(out, {"index", "lambda_start", "lambda_solved", "whole_line_integral", "slope", "epsilon",
                                "gap_solved", "gap_minus", "gap_plus"});
        csv::write_row(out, {static_cast<long>(o.index), m.p.lambda()[static_cast<std::size_t>(o.index)], lam,
                             s.whole_line_integral, s.slope, o.eps, gap, gap_minus, gap_plus});
        const bool restored = std::abs(s.whole_line_integral - o.target) <= tol;
        // The gap only has to close for the canard condition itself.
        const bool shrinks = o.target != 0.0 || gap < std::min(gap_minus, gap_plus);
        log << (restored && shrinks ? "PASS" : "FAIL") << " canard-solve: |integral - target| = "
            << format_double(std::abs(s.whole_line_integral - o.target)) << ", gap " << format_double(gap)
            << " vs perturbed " << format_double(std::min(gap_minus, gap_plus)) << '\n';
        return restored && shrinks ? pass : numeric_fail;
    });
}

int cmd_hypotheses(const HypothesesOptions& o, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const SlowFastModel m = require_model(o.common);
        if (!(o.eps_max > 0.0)) throw PreconditionError("hypotheses: --eps-max must be positive");
        if (o.grid < 2) throw PreconditionError("hypotheses: --grid must be at least 2");
        const HypothesisReport h = check_hypotheses(m, o.eps_max, o.grid);
        csv::write_header(out, {"condition", "ok", "margin", "witness_x", "witness_eps", "witness_value"});
        auto row = [&](const char* name, bool ok, double margin, const std::optional<GridPoint>& w) {
            const double nan = std::nan("");
            csv::write_row(out, {std::string(name), static_cast<long>(ok), margin, w ? w->x : nan, w ? w->eps : nan,
                                 w ? w->value : nan});
        };
        row("zeta_bound", h.zeta_bound_ok, h.zeta_margin, h.zeta_witness);
        row("p_negative_definite", h.p_negative_definite, h.p_margin, h.p_witness);
        row("f_negative", h.f_negative_ok, h.f_margin, h.f_witness);
        log << (h.passed() ? "PASS" : "FAIL") << " hypotheses: margin c = " << format_double(h.margin()) << '\n';
        return h.passed() ? pass : numeric_fail;
    });
}

}  // namespace turnpike::cli
