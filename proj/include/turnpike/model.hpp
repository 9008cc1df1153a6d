#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace turnpike {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

// P(v) = lambda_0 + lambda_1 v + ... + lambda_{2n-1} v^{2n-1} - v^{2n}
class PolyP {
public:
    PolyP(int n, std::vector<double> lambda);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int degree() const noexcept { return 2 * n_; }
    [[nodiscard]] std::span<const double> lambda() const noexcept { return lambda_; }

    [[nodiscard]] double operator()(double v) const noexcept;
    [[nodiscard]] double derivative(double v) const noexcept;

    /// u^{2n} P(1/u): the reversed polynomial, equal to -1 at u = 0.
    [[nodiscard]] double reversed(double u) const noexcept;

    /// P(-v) as a polynomial of the same family.
    [[nodiscard]] PolyP reflected() const;

    /// Copy with lambda_index replaced.
    [[nodiscard]] PolyP with_coefficient(int index, double value) const;

    struct Extremum {
        double arg;
        double value;
    };
    /// Location and value of sup_v P(v); finite because the leading coefficient is -1.
    [[nodiscard]] Extremum global_max() const;

    [[nodiscard]] bool is_negative_definite() const { return global_max().value < 0.0; }

private:
    int n_;
    std::vector<double> lambda_;
};

using ZetaFn = std::function<double(double x, double eps)>;
using GFn = std::function<double(double x, double y, double eps)>;

/// One member of the model family
///   x' = eps f_lambda(x, eps) + y g(x, y, eps),   y' = -x y.
/// The callables must be reentrant; all evaluation is const.
struct SlowFastModel {
    PolyP p;
    ZetaFn zeta;
    GFn g;
    double delta = 0.5;
    Interval domain;     // I
    Interval entry;      // I_in, inside (0, inf)
    Interval exit;       // I_out, inside (-inf, 0)
    std::string name;

    SlowFastModel(PolyP p, ZetaFn zeta, GFn g, double delta, Interval domain, Interval entry,
                  Interval exit, std::string name = {});

    [[nodiscard]] int n() const noexcept { return p.n(); }
    /// Section height in the z coordinate, -1/log(delta).
    [[nodiscard]] double section_z() const noexcept;
};

struct StateXY {
    double x = 0.0;
    double y = 0.0;
    double eps = 0.0;
};

struct StateXZ {
    double x = 0.0;
    double z = 0.0;
    double eps = 0.0;
};

struct Derivative2 {
    double dx = 0.0;
    double dw = 0.0;  // dy or dz
};

/// e^{-1/z}, exactly 0 for z <= 0 and whenever the result would leave the
/// normal range.
[[nodiscard]] double y_from_z(double z) noexcept;
/// -1/log(y) for y in (0,1), 0 for y == 0.
[[nodiscard]] double z_from_y(double y);

[[nodiscard]] double eval_f_lambda(const SlowFastModel& model, double x, double eps);
[[nodiscard]] Derivative2 vector_field_xy(const SlowFastModel& model, StateXY s);
[[nodiscard]] Derivative2 vector_field_xz(const SlowFastModel& model, StateXZ s);

struct GridPoint {
    double x = 0.0;
    double eps = 0.0;
    double value = 0.0;
};

struct HypothesisReport {
    bool zeta_bound_ok = false;       // zeta(x,0) <= -c on I
    bool p_negative_definite = false;
    bool f_negative_ok = false;       // f_lambda < 0 on I x (0, eps_max]
    double zeta_margin = 0.0;         // -max_I zeta(x,0)
    double p_margin = 0.0;            // -max P
    double f_margin = 0.0;            // -max f_lambda over the grid
    std::optional<GridPoint> zeta_witness;
    std::optional<GridPoint> p_witness;
    std::optional<GridPoint> f_witness;

    [[nodiscard]] bool passed() const noexcept {
        return zeta_bound_ok && p_negative_definite && f_negative_ok;
    }
    /// The smallest of the margins found: a valid c for all checked conditions.
    [[nodiscard]] double margin() const noexcept;
};

[[nodiscard]] HypothesisReport check_hypotheses(const SlowFastModel& model, double eps_max,
                                                int grid);

// Builtin ingredients.
namespace builtin {
/// zeta(x, eps) = -1 + beta x.
ZetaFn zeta_ddr(double beta);
ZetaFn zeta_constant_minus_one();
/// zeta(x, eps) = sum_k c_k x^k; c_0 must be -1.
ZetaFn zeta_poly(std::vector<double> coeffs);
GFn g_constant(double value);
/// g = -1 (the -1 + O(eps) term with the O(eps) part dropped).
GFn g_ddr();
}  // namespace builtin

/// The DDR system x' = eps(eps^2 l0 + eps l1 x + x^2(-1 + beta x)) - y, y' = -x y.
/// Defaults are the reference parameter set lambda = (-2, 1), beta = 1, delta = 1/2.
[[nodiscard]] SlowFastModel make_ddr_model(double lambda0 = -2.0, double lambda1 = 1.0,
                                           double beta = 1.0, double delta = 0.5);

/// Admissible entry interval for the DDR family,
/// (sqrt(2 delta), sqrt(2 delta + 1/(beta^2 (e^K+1)^2))).
[[nodiscard]] Interval ddr_admissible_entry(double lambda0, double lambda1, double beta,
                                            double delta);

}  // namespace turnpike
