#include "turnpike/roots.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <string>

#include "turnpike/errors.hpp"

namespace turnpike {

RootResult find_root(const std::function<double(double)>& f, double a, double b, double xtol) {
    if (a > b) std::swap(a, b);
    const double fa = f(a);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NumericalError("find_root: non-finite value at bracket end");
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa < 0.0) == (fb < 0.0))
        throw NumericalError("find_root: no sign change on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]");

    auto done = [xtol](double lo, double hi) {
        return std::abs(hi - lo) <= xtol * std::max(1.0, std::abs(lo));
    };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
    const double x = 0.5 * (r.first + r.second);
    return {x, f(x), iters};
}

std::optional<Bracket> scan_for_bracket(const std::function<double(double)>& f, double a, double b,
                                        int samples) {
    if (samples < 2) samples = 2;
    double prev_x = a;
    double prev_f = f(a);
    for (int i = 1; i < samples; ++i) {
        const double x = a + (b - a) * i / (samples - 1);
        const double fx = f(x);
        if (std::isfinite(prev_f) && std::isfinite(fx) &&
            (prev_f == 0.0 || fx == 0.0 || (prev_f < 0.0) != (fx < 0.0)))
            return Bracket{prev_x, x};
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

}  // namespace turnpike
