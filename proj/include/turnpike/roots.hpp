#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace turnpike {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    std::uintmax_t iterations = 0;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// Bracketed root of f on [a, b]; f(a) and f(b) must differ in sign (or one
/// of them vanish). Stops when the bracket is narrower than xtol relative to
/// |x| (absolute below 1). Throws NumericalError without a sign change.
RootResult find_root(const std::function<double(double)>& f, double a, double b, double xtol);

/// First sign change of f over `samples` equispaced points of [a, b].
std::optional<Bracket> scan_for_bracket(const std::function<double(double)>& f, double a, double b,
                                        int samples);

}  // namespace turnpike
