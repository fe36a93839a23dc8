#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "exsum/curves.hpp"

using namespace exsum;

namespace {

PoleBlock inf_block(const FieldPtr& F, std::vector<std::vector<int64_t>> coeffs) {
    PoleBlock b;
    for (auto& c : coeffs) b.coeffs.push_back(F->element(std::move(c)));
    return b;
}

PoleBlock finite_block(const FieldPtr& F, std::vector<int64_t> at,
                       std::vector<std::vector<int64_t>> coeffs) {
    PoleBlock b;
    b.location = F->element(std::move(at));
    for (auto& c : coeffs) b.coeffs.push_back(F->element(std::move(c)));
    return b;
}

RationalFunction x_squared_f3() {
    auto F = Field::make(3, 1);
    return RationalFunction::validate(F, {inf_block(F, {{0}, {1}})});
}

RationalFunction amusing_f3() {  // x^2 + x^{-2}
    auto F = Field::make(3, 1);
    return RationalFunction::validate(
        F, {inf_block(F, {{0}, {1}}), finite_block(F, {0}, {{0}, {1}})});
}

mpq_class q(int64_t n, int64_t d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("zeta numerator of y^3 - y = x^2") {
    auto L = l_polynomial(x_squared_f3());
    auto Z = zeta_numerator(L, 1);
    // (1+(1+2z)T)(1+(1+2z^2)T) = 1 + 3T^2
    CHECK(Z.coeffs == std::vector<mpz_class>{1, 0, 3});
    CHECK(Z.degree() == 2);       // 2g = d(p-1) = 2
    CHECK(Z.genus() == 1);
    CHECK(Z.functional_equation_holds());
}

TEST_CASE("numerator degree is (p-1) d") {
    auto L = l_polynomial(amusing_f3());
    auto Z = zeta_numerator(L, 1);
    CHECK(Z.degree() == 2 * 4);
    CHECK(Z.coeffs[0] == 1);
    CHECK(Z.functional_equation_holds());
}

TEST_CASE("point counts from the numerator recurrence") {
    auto L = l_polynomial(x_squared_f3());
    auto Z = zeta_numerator(L, 1);
    // #C(F_3) = 1 + 3 - (alpha + beta) with alpha + beta = 0
    CHECK(Z.point_count(1) == 4);
    // alpha * beta = 3, alpha^2 + beta^2 = -6: #C(F_9) = 1 + 9 + 6
    CHECK(Z.point_count(2) == 16);
}

TEST_CASE("direct point counts") {
    auto f = x_squared_f3();
    CHECK(point_count_direct(f, 1) == 4);  // l + p N_0 = 1 + 3*1
    auto g = amusing_f3();
    // N_0(1) = 0 (both values have trace 2), so only the 2 points at the poles
    CHECK(point_count_direct(g, 1) == 2);
}

TEST_CASE("zeta consistency across extensions") {
    for (auto f : {x_squared_f3(), amusing_f3()}) {
        auto Z = zeta_numerator(l_polynomial(f), 1);
        int64_t k_max = std::min<int64_t>(Z.degree(), 4);
        int64_t bad = 0;
        CHECK(zeta_consistency(f, Z, k_max, &bad));
    }
}

TEST_CASE("tampered numerator fails the consistency check") {
    auto f = x_squared_f3();
    auto Z = zeta_numerator(l_polynomial(f), 1);
    Z.coeffs[1] += 1;
    int64_t bad = 0;
    CHECK_FALSE(zeta_consistency(f, Z, 2, &bad));
    CHECK(bad == 1);
}

TEST_CASE("curve polygon and p-rank of the quadratic instance") {
    auto Z = zeta_numerator(l_polynomial(x_squared_f3()), 1);
    auto inv = curve_np_and_prank(Z);
    REQUIRE(inv.curve_np.vertices().size() == 2);
    CHECK(inv.curve_np.vertices()[1].x == 2);
    CHECK(inv.curve_np.vertices()[1].y == 1);
    CHECK(inv.p_rank == 0);  // (l-1)(p-1) = 0
}

TEST_CASE("curve polygon of the two-pole instance") {
    auto f = amusing_f3();
    auto Z = zeta_numerator(l_polynomial(f), 1);
    auto inv = curve_np_and_prank(Z);
    auto segs = inv.curve_np.slope_segments();
    REQUIRE(segs.size() == 3);
    CHECK(segs[0] == std::make_pair(q(0), int64_t(2)));
    CHECK(segs[1] == std::make_pair(q(1, 2), int64_t(4)));
    CHECK(segs[2] == std::make_pair(q(1), int64_t(2)));
    CHECK(inv.p_rank == 2);  // (l-1)(p-1)
    CHECK(Z.genus() == 4);   // d(p-1)/2
}

TEST_CASE("curve polygon is the function polygon stretched by p-1") {
    for (auto f : {x_squared_f3(), amusing_f3()}) {
        auto L = l_polynomial(f);
        auto np = newton_polygon(L, 1);
        auto inv = curve_np_and_prank(zeta_numerator(L, 1));
        CHECK(inv.curve_np == np.scaled(f.base()->p() - 1, 1));
    }
}

TEST_CASE("numerator over a degree-2 base field") {
    // same cover equation but with coefficients in F_9
    auto F = Field::make(3, 2);
    auto f = RationalFunction::validate(F, {inf_block(F, {{0, 0}, {1, 0}})});
    auto Z = zeta_numerator(l_polynomial(f), 2);
    CHECK(Z.q() == 9);
    CHECK(Z.functional_equation_holds());
    CHECK(zeta_consistency(f, Z, 2));
    auto inv = curve_np_and_prank(Z);
    CHECK(inv.p_rank == 0);
}
