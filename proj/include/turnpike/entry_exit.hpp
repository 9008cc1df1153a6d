#pragma once

#include <vector>

#include "turnpike/model.hpp"
#include "turnpike/quadrature.hpp"
#include "turnpike/roots.hpp"

namespace turnpike {

enum class SectionSide { in, out };

/// Fast fibers of the eps = 0 layer problem, dx/dy = -g(x, y, 0)/x.
class BasePointMap {
public:
    explicit BasePointMap(const SlowFastModel& model, double tol = 1e-13, double x_floor = 1e-6);

    /// psi(x_start, 0): follow the fiber through (x_start, delta) down to y = 0.
    [[nodiscard]] double base_point(double x_start, SectionSide side) const;
    /// Inverse: follow the fiber through (x_base, 0) up to y = delta.
    [[nodiscard]] double section_point(double x_base) const;

    struct FiberSample {
        double y;
        double x;
    };
    /// The fiber from (x0, y0) to height y1, sampled at the integrator nodes.
    [[nodiscard]] std::vector<FiberSample> fiber(double x0, double y0, double y1) const;

private:
    const SlowFastModel* model_;
    double tol_;
    double x_floor_;
};

[[nodiscard]] double base_point(const SlowFastModel& model, double x_start, SectionSide side);

struct EntryExitResult {
    double x_in = 0.0;
    double x_in_b = 0.0;
    double x_out_b = 0.0;
    double x_out = 0.0;
    double relation_residual = 0.0;
};

/// Limiting entry-exit map for n = 1: base point, root of
/// p.v. int_{x_out_b}^{x_in_b} ds/(s zeta) + p.v. int_R s/P = 0, exit fiber.
[[nodiscard]] EntryExitResult solve_delta0_n1(const SlowFastModel& model, double x_in,
                                              double tol = 1e-12);

struct DdrClosedForm {
    double K = 0.0;
    double x_in_b = 0.0;
    double x_out_b = 0.0;
    double x_out = 0.0;
};

[[nodiscard]] DdrClosedForm ddr_delta0_closed_form(double beta, double lambda0, double lambda1,
                                                   double delta, double x_in);

struct DelayPrediction {
    int n = 0;
    double positive_half = 0.0;  // int_0^inf v/P
    double negative_half = 0.0;  // int_{-inf}^0 v/P
    double whole_line_integral = 0.0;
    double z_in_leading = 0.0;
    double z_out_leading = 0.0;
    double z_in = 0.0;   // eps^{2n-1} z_in_leading
    double z_out = 0.0;
};

[[nodiscard]] DelayPrediction predict_delay_nge2(const PolyP& p, double eps, double tol = 1e-12);

struct CanardSolution {
    int index = 0;
    double lambda_l = 0.0;
    PolyP p;
    double whole_line_integral = 0.0;
    double slope = 0.0;  // d/d lambda_l of the whole-line integral, -int v^{1+l}/P^2
};

/// Solve int_R v/P_lambda = target for lambda_l (odd l), starting from p.
[[nodiscard]] CanardSolution solve_canard_parameter(const PolyP& p, int l, double target,
                                                    double tol = 1e-12);

/// Classical entry-exit: root in `bracket` of int_{x_in}^{x_out} h/f ds = 0.
[[nodiscard]] double classical_delta0(const Integrand& h_over_f, double x_in, Bracket bracket,
                                      double tol = 1e-12);

}  // namespace turnpike
