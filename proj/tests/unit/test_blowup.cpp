#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "turnpike/blowup.hpp"
#include "turnpike/dulac.hpp"
#include "turnpike/entry_exit.hpp"
#include "turnpike/errors.hpp"

using namespace turnpike;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SlowFastModel flat(int n) {
    std::vector<double> lam(2 * n, 0.0);
    lam[0] = -1.0;
    return SlowFastModel(PolyP(n, lam), builtin::zeta_constant_minus_one(), builtin::g_ddr(), 0.5, {-3, 3}, {1.0, 1.5},
                         {-1.5, -1.0});
}

// DDR zeta = -1 + s: int_{xb}^{x} ds/(s(s-1)) in closed form
double ddr_z2(double xb, double x) { return 1.0 / (std::log(xb / x) + std::log((1 - x) / (1 - xb))); }

double sup_distance_to_curve(const SlowFastModel& m, double xb, double eps) {
    const auto tr = dulac_trajectory(m, 1.016, eps);
    double sup = 0.0;
    int seen = 0;
    for (const auto& p : overlay_xz2(tr, eps))
        if (p.x >= 0.05 && p.x <= xb - 0.05) {
            sup = std::max(sup, std::abs(p.z2 - theoretical_z2_curve(m, xb, p.x)));
            ++seen;
        }
    REQUIRE(seen >= 3);
    return sup;
}

}  // namespace

TEST_CASE("chart transforms") {
    const auto p = to_chart_eps1(0.01, 0.01);
    CHECK(p.chart == Chart::epsbar1);
    CHECK(p.first == 1.0);
    CHECK(p.second == 0.01);
    const auto q = to_chart_z1(0.2, 0.01);
    CHECK(q.first == 0.2);
    CHECK_THAT(q.second, WithinRel(0.05, 1e-15));
    CHECK_THROWS_AS(to_chart_eps1(0.1, 0.0), PreconditionError);
    CHECK_THROWS_AS(to_chart_z1(0.0, 0.1), PreconditionError);
}

TEST_CASE("chart round trips and the chart-change identity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-3, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double z = u(rng), eps = u(rng) * 1e-2;
        const auto e1 = to_chart_eps1(z, eps);
        const auto back = from_chart(e1);
        CHECK_THAT(back.z, WithinRel(z, 1e-15));
        CHECK(back.eps == eps);
        const auto c = change_chart(e1);
        CHECK(c.chart == Chart::zbar1);
        CHECK(c.first == e1.second * e1.first);
        CHECK(c.second == 1.0 / e1.first);
        const auto z1 = to_chart_z1(z, eps);
        CHECK_THAT(c.first, WithinRel(z1.first, 1e-15));
        CHECK_THAT(c.second, WithinRel(z1.second, 1e-15));
        const auto cc = change_chart(c);
        CHECK_THAT(cc.first, WithinRel(e1.first, 1e-15));
        CHECK_THAT(cc.second, WithinRel(e1.second, 1e-15));
    }
}

TEST_CASE("eps = 0 curve, n = 1, zeta = -1: 1/log(x_b/x)") {
    const auto m = flat(1);
    for (double x : {1e-6, 0.01, 0.1, 0.3}) CHECK_THAT(theoretical_z2_curve(m, 0.4, x), WithinRel(1.0 / std::log(0.4 / x), 1e-12));
}

TEST_CASE("eps = 0 curve for the DDR zeta") {
    const auto m = make_ddr_model();
    const double xb = base_point(m, 1.016, SectionSide::in);
    for (double x : {1e-12, 1e-4, 0.05, 0.17}) CHECK_THAT(theoretical_z2_curve(m, xb, x), WithinRel(ddr_z2(xb, x), 1e-11));
}

TEST_CASE("eps = 0 curve, n = 2: z_2 x^{-2} = 2/(1 - x^2/x_b^2) -> 2") {
    const auto m = flat(2);
    for (double x : {1e-4, 1e-2, 0.2}) CHECK_THAT(theoretical_z2_curve(m, 0.5, x) / (x * x), WithinRel(2.0 / (1 - x * x / 0.25), 1e-10));
    CHECK_THAT(theoretical_z2_curve(m, 0.5, 1e-4) / 1e-8, WithinRel(2.0, 0.01));
}

TEST_CASE("n = 1 limit z_2 log(1/x) -> 1 is approached from above, logarithmically") {
    const auto m = make_ddr_model();
    const double xb = base_point(m, 1.016, SectionSide::in);
    double prev = 1e300;
    for (double x : {1e-4, 1e-8, 1e-16, 1e-64, 1e-300}) {
        const double v = theoretical_z2_curve(m, xb, x) * std::log(1.0 / x);
        CHECK(v > 1.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THAT(prev, WithinAbs(1.0, 0.01));
}

TEST_CASE("eps = 0 curve increases and blows up at the base point") {
    const auto m = make_ddr_model();
    const double xb = base_point(m, 1.016, SectionSide::in);
    double prev = 0.0;
    for (int i = 1; i < 40; ++i) {
        const double v = theoretical_z2_curve(m, xb, xb * i / 40.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(theoretical_z2_curve(m, xb, xb - 1e-4) > 1e3);
    CHECK_THROWS_AS(theoretical_z2_curve(m, xb, xb), PreconditionError);
}

TEST_CASE("chart-1 exit") {
    const auto m = flat(1);
    CHECK(chart1_exit(m, 0.3, 0.0) == 0.3);
    for (double e1 : {0.01, 0.5, 3.0}) CHECK_THAT(chart1_exit(m, 0.3, e1), WithinRel(0.3 * std::exp(-e1), 1e-12));

    const auto ddr = make_ddr_model();
    const double xb = base_point(ddr, 1.016, SectionSide::in);
    double prev = xb;
    for (int i = 1; i <= 20; ++i) {
        const double e1 = 0.05 * i;
        const double x = chart1_exit(ddr, xb, e1);
        CHECK(x < prev);
        CHECK_THAT(theoretical_z2_curve(ddr, xb, x), WithinRel(1.0 / e1, 1e-9));
        prev = x;
    }
    CHECK_THROWS_AS(chart1_exit(m, 0.3, 1000.0), NumericalError);
}

TEST_CASE("trajectory overlay in the (x, z_2) plane") {
    const auto m = make_ddr_model();
    const auto tr = dulac_trajectory(m, 1.016, 0.01);
    const auto same = overlay_xz2(tr, 1.0);
    REQUIRE(same.size() == tr.nodes().size());
    for (std::size_t i = 0; i < same.size(); ++i) {
        CHECK(same[i].x == tr.nodes()[i].x);
        CHECK(same[i].z2 == tr.nodes()[i].z);
    }
    CHECK_THROWS_AS(overlay_xz2(tr, 0.0), PreconditionError);
}

TEST_CASE("trajectories approach the eps = 0 curve and dip at the turning point") {
    const auto m = make_ddr_model();
    const double xb = base_point(m, 1.016, SectionSide::in);
    const double d2 = sup_distance_to_curve(m, xb, 0.01);
    const double d3 = sup_distance_to_curve(m, xb, 0.001);
    CHECK(d3 < d2);

    const auto tr = dulac_trajectory(m, 1.016, 0.001);
    const auto pts = overlay_xz2(tr, 0.001);
    const auto lowest = std::min_element(pts.begin(), pts.end(), [](const XZ2& a, const XZ2& b) { return a.z2 < b.z2; });
    CHECK(std::abs(lowest->x) < 0.05);
}
