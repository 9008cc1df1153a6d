#pragma once

#include <span>

namespace turnpike {

struct RemainderFit {
    double a = 0.0;  // coefficient of eps log(1/eps)
    double b = 0.0;  // coefficient of eps
    double residual_norm = 0.0;
    double relative_residual = 0.0;  // ||residual|| / ||data||
    bool saturated = false;          // data below the resolvable floor; no fit attempted
};

/// Least-squares fit err(eps) ~ a eps log(1/eps) + b eps. Needs >= 3 points.
/// Data whose largest magnitude is below `floor` is reported as saturated.
[[nodiscard]] RemainderFit fit_remainder(std::span<const double> eps, std::span<const double> err,
                                         double floor = 1e-9);

}  // namespace turnpike
