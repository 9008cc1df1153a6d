#pragma once

#include <vector>

#include "turnpike/integrator.hpp"
#include "turnpike/model.hpp"

namespace turnpike {

// Charts of the cylindrical blow-up z = rho zbar, eps = rho epsbar.
enum class Chart { zbar1, epsbar1 };

struct ChartPoint {
    Chart chart = Chart::epsbar1;
    double first = 0.0;   // rho_1 (zbar1) or z_2 (epsbar1)
    double second = 0.0;  // eps_1 (zbar1) or rho_2 (epsbar1)
};

/// (z, eps) -> (z_2, rho_2) = (z/eps, eps).
[[nodiscard]] ChartPoint to_chart_eps1(double z, double eps);
/// (z, eps) -> (rho_1, eps_1) = (z, eps/z); requires z > 0.
[[nodiscard]] ChartPoint to_chart_z1(double z, double eps);

struct BlowupCoords {
    double z = 0.0;
    double eps = 0.0;
};
[[nodiscard]] BlowupCoords from_chart(const ChartPoint& p);

/// epsbar = 1 -> zbar = 1: rho_1 = rho_2 z_2, eps_1 = 1/z_2 (z_2 > 0).
[[nodiscard]] ChartPoint change_chart(const ChartPoint& p);

/// int_{x_in_b}^{x} ds / (s^{2n-1} zeta(s, 0)) for 0 < x, by quadrature in log s.
[[nodiscard]] double layer_integral(const SlowFastModel& model, double x_in_b, double x,
                                    double rel_tol = 1e-12);

/// The eps = 0 invariant curve z_2(x) = 1 / int_{x_in_b}^{x} ds/(s^{2n-1} zeta(s,0)),
/// for 0 < x < x_in_b.
[[nodiscard]] double theoretical_z2_curve(const SlowFastModel& model, double x_in_b, double x);

/// x_out,1 solving eps_1 = int_{x_in_b}^{x_out,1} ds/(s^{2n-1} zeta(s,0)).
[[nodiscard]] double chart1_exit(const SlowFastModel& model, double x_in_b, double eps1);

struct XZ2 {
    double x = 0.0;
    double z2 = 0.0;
};

/// Trajectory nodes in the (x, z_2) view, z_2 = z/eps.
[[nodiscard]] std::vector<XZ2> overlay_xz2(const Trajectory& trajectory, double eps);

}  // namespace turnpike
