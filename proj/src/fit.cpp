#include "turnpike/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "turnpike/errors.hpp"

namespace turnpike {

RemainderFit fit_remainder(std::span<const double> eps, std::span<const double> err, double floor) {
    if (eps.size() != err.size()) throw PreconditionError("fit_remainder: size mismatch");
    if (eps.size() < 3) throw PreconditionError("fit_remainder: need at least 3 eps values");
    RemainderFit f;
    double peak = 0.0;
    for (double e : err) peak = std::max(peak, std::abs(e));
    if (peak < floor) {
        f.saturated = true;
        return f;
    }
    const auto m = static_cast<Eigen::Index>(eps.size());
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double e = eps[static_cast<std::size_t>(i)];
        if (!(e > 0.0 && e < 1.0)) throw PreconditionError("fit_remainder: eps must lie in (0,1)");
        A(i, 0) = e * std::log(1.0 / e);
        A(i, 1) = e;
        y(i) = err[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    f.a = c(0);
    f.b = c(1);
    f.residual_norm = (A * c - y).norm();
    f.relative_residual = f.residual_norm / y.norm();
    return f;
}

}  // namespace turnpike
