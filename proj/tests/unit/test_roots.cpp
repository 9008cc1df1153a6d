#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "turnpike/errors.hpp"
#include "turnpike/roots.hpp"

using namespace turnpike;
using Catch::Matchers::WithinAbs;

TEST_CASE("bracketed root") {
    const auto r = find_root([](double x) { return std::cos(x); }, 0.0, 2.0, 1e-15);
    CHECK_THAT(r.x, WithinAbs(std::numbers::pi / 2, 1e-14));
    CHECK(std::abs(r.fx) < 1e-14);
    CHECK(r.iterations < 30);
    // root at an endpoint
    CHECK(find_root([](double x) { return x; }, 0.0, 1.0, 1e-15).x == 0.0);
}

TEST_CASE("no sign change is an error") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-12), NumericalError);
}

TEST_CASE("scan for a bracket") {
    const auto b = scan_for_bracket([](double x) { return x - 0.37; }, 0.0, 1.0, 64);
    REQUIRE(b);
    CHECK(b->lo <= 0.37);
    CHECK(b->hi >= 0.37);
    CHECK(b->hi - b->lo <= 1.0 / 63 + 1e-15);
    CHECK_FALSE(scan_for_bracket([](double) { return 1.0; }, 0.0, 1.0, 64));
}
