#include "turnpike/blowup.hpp"

#include <cmath>
#include <string>

#include "turnpike/errors.hpp"
#include "turnpike/quadrature.hpp"
#include "turnpike/roots.hpp"

namespace turnpike {

ChartPoint to_chart_eps1(double z, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("to_chart_eps1: eps must be positive");
    return {Chart::epsbar1, z / eps, eps};
}

ChartPoint to_chart_z1(double z, double eps) {
    if (!(z > 0.0)) throw PreconditionError("to_chart_z1: z must be positive");
    return {Chart::zbar1, z, eps / z};
}

BlowupCoords from_chart(const ChartPoint& p) {
    if (p.chart == Chart::epsbar1) return {p.second * p.first, p.second};
    return {p.first, p.first * p.second};
}

ChartPoint change_chart(const ChartPoint& p) {
    if (p.chart == Chart::epsbar1) {
        if (!(p.first > 0.0)) throw PreconditionError("change_chart: need z_2 > 0");
        return {Chart::zbar1, p.second * p.first, 1.0 / p.first};
    }
    if (!(p.second > 0.0)) throw PreconditionError("change_chart: need eps_1 > 0");
    return {Chart::epsbar1, 1.0 / p.second, p.first * p.second};
}

double layer_integral(const SlowFastModel& model, double x_in_b, double x, double rel_tol) {
    if (!(x > 0.0 && x_in_b > 0.0)) throw PreconditionError("layer_integral: need x, x_in_b > 0");
    const int shift = 2 * model.n() - 2;
    const auto& zeta = model.zeta;
    // s = e^t: ds / (s^{2n-1} zeta) = e^{-(2n-2) t} / zeta(e^t) dt
    auto integrand = [&](double t) { return std::exp(-shift * t) / zeta(std::exp(t), 0.0); };
    QuadOptions o;
    o.abs_tol = 1e-300;
    o.rel_tol = rel_tol;
    return adaptive_quad(integrand, std::log(x_in_b), std::log(x), o).value;
}

double theoretical_z2_curve(const SlowFastModel& model, double x_in_b, double x) {
    if (!(x > 0.0 && x < x_in_b))
        throw PreconditionError("theoretical_z2_curve: need 0 < x < x_in_b");
    return 1.0 / layer_integral(model, x_in_b, x);
}

double chart1_exit(const SlowFastModel& model, double x_in_b, double eps1) {
    if (!(x_in_b > 0.0)) throw PreconditionError("chart1_exit: x_in_b must be positive");
    if (eps1 < 0.0) throw PreconditionError("chart1_exit: eps1 must be >= 0");
    if (eps1 == 0.0) return x_in_b;
    const double top = std::log(x_in_b);
    auto residual = [&](double t) { return layer_integral(model, x_in_b, std::exp(t)) - eps1; };
    double width = 0.5;
    double t_lo = top - width;
    constexpr double kLowest = -690.0;  // log of ~1e-300
    while (residual(t_lo) < 0.0) {
        if (t_lo <= kLowest)
            throw NumericalError("chart1_exit: no root below x_in_b for eps1 = " + std::to_string(eps1));
        width *= 2.0;
        t_lo = std::max(top - width, kLowest);
    }
    return std::exp(find_root(residual, t_lo, top, 1e-15).x);
}

std::vector<XZ2> overlay_xz2(const Trajectory& trajectory, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("overlay_xz2: eps must be positive");
    std::vector<XZ2> out;
    out.reserve(trajectory.nodes().size());
    for (const auto& n : trajectory.nodes()) out.push_back({n.x, n.z / eps});
    return out;
}

}  // namespace turnpike
