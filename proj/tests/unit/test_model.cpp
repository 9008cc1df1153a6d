#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "turnpike/errors.hpp"
#include "turnpike/model.hpp"

using namespace turnpike;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// naive power-sum evaluation, independent of the Horner code
double naive_p(const std::vector<double>& lam, double v) {
    const int d = static_cast<int>(lam.size());
    double s = -std::pow(v, d);
    for (int k = 0; k < d; ++k) s += lam[k] * std::pow(v, k);
    return s;
}

SlowFastModel constant_model(PolyP p, double g = -1.0) {
    return SlowFastModel(std::move(p), builtin::zeta_constant_minus_one(), builtin::g_constant(g), 0.5, {-3, 3},
                         {1.0, 1.5}, {-1.5, -1.0});
}

}  // namespace

TEST_CASE("PolyP evaluation agrees with the power sum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> lam(2 * n);
        for (auto& l : lam) l = c(rng);
        const PolyP p(n, lam);
        for (int i = 0; i < 20; ++i) {
            const double v = c(rng);
            CHECK_THAT(p(v), WithinAbs(naive_p(lam, v), 1e-12));
            const double h = 1e-6;
            CHECK_THAT(p.derivative(v), WithinAbs((naive_p(lam, v + h) - naive_p(lam, v - h)) / (2 * h), 1e-6));
        }
    }
}

TEST_CASE("reversed polynomial is u^{2n} P(1/u)") {
    const PolyP p(2, {-1.0, 0.5, 0.3, -0.2});
    CHECK(p.reversed(0.0) == -1.0);
    for (double u : {0.1, 0.5, -0.7, 2.0}) CHECK_THAT(p.reversed(u), WithinRel(std::pow(u, 4) * p(1.0 / u), 1e-12));
}

TEST_CASE("reflection and coefficient replacement") {
    const PolyP p(2, {-1.0, 0.5, 0.3, -0.2});
    const PolyP r = p.reflected();
    for (double v : {-1.3, 0.0, 0.4, 2.2}) CHECK_THAT(r(v), WithinAbs(p(-v), 1e-13));
    const PolyP q = p.with_coefficient(1, 0.0);
    CHECK(q.lambda()[1] == 0.0);
    CHECK(q.lambda()[2] == 0.3);
    CHECK_THROWS_AS(p.with_coefficient(4, 0.0), PreconditionError);
    CHECK_THROWS_AS(PolyP(2, {1.0, 2.0}), PreconditionError);
    CHECK_THROWS_AS(PolyP(0, {}), PreconditionError);
}

TEST_CASE("global maximum of a quadratic") {
    // l0 + l1 v - v^2 peaks at l1/2 with value l0 + l1^2/4
    const PolyP p(1, {-2.0, 1.0});
    const auto m = p.global_max();
    CHECK_THAT(m.arg, WithinAbs(0.5, 1e-12));
    CHECK_THAT(m.value, WithinAbs(-1.75, 1e-14));
    CHECK(p.is_negative_definite());
    CHECK_FALSE(PolyP(1, {1.0, 0.0}).is_negative_definite());
}

TEST_CASE("global maximum of a quartic with two humps") {
    // -v^4 + 2 v^2 - 3 + 0.1 v: maxima near v = +-1, the right one higher
    const PolyP p(2, {-3.0, 0.1, 2.0, 0.0});
    const auto m = p.global_max();
    double best = -1e300;
    for (int i = 0; i <= 400000; ++i) best = std::max(best, p(-2.0 + 4.0 * i / 400000));
    CHECK(m.arg > 0.9);
    CHECK_THAT(m.value, WithinAbs(best, 1e-9));
}

TEST_CASE("model preconditions") {
    const PolyP p(1, {-2.0, 1.0});
    auto zeta = builtin::zeta_constant_minus_one();
    auto g = builtin::g_ddr();
    CHECK_NOTHROW(SlowFastModel(p, zeta, g, 0.5, {-1, 1}, {0.5, 0.9}, {-0.9, -0.5}));
    CHECK_THROWS_AS(SlowFastModel(p, zeta, g, 1.0, {-1, 1}, {0.5, 0.9}, {-0.9, -0.5}), PreconditionError);
    CHECK_THROWS_AS(SlowFastModel(p, zeta, g, 0.5, {0.1, 1}, {0.5, 0.9}, {-0.9, -0.5}), PreconditionError);
    CHECK_THROWS_AS(SlowFastModel(p, zeta, g, 0.5, {-1, 1}, {-0.1, 0.9}, {-0.9, -0.5}), PreconditionError);
    CHECK_THROWS_AS(SlowFastModel(p, zeta, g, 0.5, {-1, 1}, {0.5, 0.9}, {-0.9, 0.1}), PreconditionError);
    auto zeta_off = [](double x, double) { return -0.5 + x; };
    CHECK_THROWS_AS(SlowFastModel(p, zeta_off, g, 0.5, {-1, 1}, {0.5, 0.9}, {-0.9, -0.5}), PreconditionError);
    CHECK_THROWS_AS(builtin::zeta_poly({-0.5, 1.0}), PreconditionError);
}

TEST_CASE("section height in z") {
    const auto m = make_ddr_model();
    CHECK_THAT(m.section_z(), WithinRel(1.0 / std::log(2.0), 1e-15));
    CHECK_THAT(y_from_z(m.section_z()), WithinRel(0.5, 1e-15));
}

TEST_CASE("y <-> z transform") {
    CHECK(y_from_z(0.0) == 0.0);
    CHECK(y_from_z(-1.0) == 0.0);
    // e^{-1000} is far below the normal range: guarded to exactly 0
    CHECK(y_from_z(1e-3) == 0.0);
    CHECK(z_from_y(0.0) == 0.0);
    for (double z : {0.01, 0.1, 0.5, 1.0, 3.0}) CHECK_THAT(z_from_y(y_from_z(z)), WithinRel(z, 1e-13));
    CHECK_THROWS_AS(z_from_y(1.0), PreconditionError);
    CHECK_THROWS_AS(z_from_y(-0.1), PreconditionError);
}

TEST_CASE("f_lambda expansion equals eps^{2n} P(x/eps) + x^{2n}(zeta + 1)") {
    const auto ddr = make_ddr_model();
    const auto quart = constant_model(PolyP(2, {-1.0, 0.5, 0.2, -0.1}));
    for (const SlowFastModel* m : {&ddr, &quart}) {
        const int d = 2 * m->n();
        for (double eps : {0.3, 0.05, 0.01})
            for (double x : {-0.8, -0.01, 0.0, 0.02, 0.7}) {
                const double ref = std::pow(eps, d) * m->p(x / eps) + std::pow(x, d) * (m->zeta(x, eps) + 1.0);
                CHECK_THAT(eval_f_lambda(*m, x, eps), WithinAbs(ref, 1e-12 * (std::pow(eps, d) + std::pow(std::abs(x), d))));
            }
    }
}

TEST_CASE("the (x,z) field is the chain rule image of the (x,y) field") {
    const auto m = make_ddr_model();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-2.0, 0.9), uz(0.05, 2.0), ue(1e-3, 0.1);
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng), z = uz(rng), eps = ue(rng);
        const double y = y_from_z(z);
        const auto fxy = vector_field_xy(m, {x, y, eps});
        const auto fxz = vector_field_xz(m, {x, z, eps});
        // z = -1/log y  =>  z' = z^2 y'/y
        CHECK_THAT(fxz.dx, WithinAbs(fxy.dx, 1e-14));
        CHECK_THAT(fxz.dw, WithinRel(z * z * fxy.dw / y, 1e-12));
    }
}

TEST_CASE("the line y = 0 is invariant and at eps = 0 consists of equilibria") {
    const auto m = make_ddr_model();
    for (double x : {-1.0, 0.3}) {
        const auto d0 = vector_field_xz(m, {x, 0.0, 0.0});
        CHECK(d0.dx == 0.0);
        CHECK(d0.dw == 0.0);
        CHECK(vector_field_xy(m, {x, 0.0, 0.01}).dw == 0.0);
    }
}

TEST_CASE("hypotheses on the reference DDR model") {
    const auto m = make_ddr_model();
    const auto h = check_hypotheses(m, 0.01, 200);
    CHECK(h.passed());
    // zeta = -1 + x peaks at the right end of I = [-10, 0.95]
    CHECK_THAT(h.zeta_margin, WithinAbs(0.05, 1e-12));
    CHECK_THAT(h.p_margin, WithinAbs(1.75, 1e-12));
    CHECK_THAT(h.margin(), WithinAbs(0.05, 1e-12));
    CHECK_FALSE(h.zeta_witness);
}

TEST_CASE("hypothesis violations come with witnesses") {
    SECTION("zeta changes sign on I") {
        SlowFastModel m(PolyP(1, {-2.0, 1.0}), builtin::zeta_ddr(2.0), builtin::g_ddr(), 0.5, {-1, 1}, {0.5, 0.9},
                        {-0.9, -0.5});
        const auto h = check_hypotheses(m, 0.01, 100);
        CHECK_FALSE(h.zeta_bound_ok);
        REQUIRE(h.zeta_witness);
        CHECK(h.zeta_witness->value >= 0.0);
        CHECK_FALSE(h.passed());
    }
    SECTION("P not negative definite") {
        const auto m = constant_model(PolyP(1, {1.0, 0.0}));
        const auto h = check_hypotheses(m, 0.01, 50);
        CHECK_FALSE(h.p_negative_definite);
        REQUIRE(h.p_witness);
        CHECK_THAT(h.p_witness->value, WithinAbs(1.0, 1e-12));
        CHECK_FALSE(h.f_negative_ok);
    }
    CHECK_THROWS_AS(check_hypotheses(make_ddr_model(), 0.0, 10), PreconditionError);
}

TEST_CASE("admissible DDR entry interval") {
    const auto adm = ddr_admissible_entry(-2.0, 1.0, 1.0, 0.5);
    const double K = std::numbers::pi / std::sqrt(7.0);
    CHECK(adm.lo == 1.0);
    CHECK_THAT(adm.hi, WithinRel(std::sqrt(1.0 + 1.0 / std::pow(std::exp(K) + 1.0, 2)), 1e-15));
    const auto m = make_ddr_model();
    CHECK(m.entry.lo > adm.lo);
    CHECK(m.entry.hi < adm.hi);
    CHECK(m.entry.contains(1.016));
    CHECK_THROWS_AS(ddr_admissible_entry(1.0, 0.0, 1.0, 0.5), PreconditionError);
}
