#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "exsum/dwork.hpp"
#include "exsum/lseries.hpp"

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

RationalFunction x_fourth_f3() {
    auto F = Field::make(3, 1);
    return RationalFunction::validate(F, {inf_block(F, {{0}, {1}, {0}, {0}, {1}})});
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

// true when x - y has valuation at least the ring's certified precision
bool close(const GammaElement& x, const GammaElement& y) {
    return !(x - y).valuation().has_value();
}

}  // namespace

TEST_CASE("artin-hasse coefficients") {
    auto e3 = artin_hasse_coefficients(3, 5);
    CHECK(e3[0] == 1);
    CHECK(e3[1] == 1);
    CHECK(e3[2] == mpq_class(1, 2));
    CHECK(e3[3] == mpq_class(1, 2));
    auto e2 = artin_hasse_coefficients(2, 3);
    CHECK(e2[2] == 1);  // 1/2 from exp + 1/2 from the x^2/2 term
    // p-integrality to degree 200 is asserted inside the computation
    for (int64_t p : {2, 3, 5, 7}) CHECK_NOTHROW(artin_hasse_coefficients(p, 200));
}

TEST_CASE("teichmuller lifts") {
    CHECK(teichmuller_lift(5, 0, 3).residue() == 0);
    CHECK(teichmuller_lift(5, 1, 3).residue() == 1);
    CHECK(teichmuller_lift(5, 2, 2).residue() == 7);  // 7^5 = 7 mod 25
    for (int64_t p : {3, 5, 7})
        for (int64_t a = 1; a < p; ++a) {
            auto t = teichmuller_lift(p, a, 4);
            mpz_class mod = pow_int(p, 4), pw;
            mpz_powm_ui(pw.get_mpz_t(), t.residue().get_mpz_t(),
                        static_cast<unsigned long>(p - 1), mod.get_mpz_t());
            CHECK(pw == 1);  // roots of unity
            CHECK(t.residue() % p == a);
        }
}

TEST_CASE("truncated p-adic integers") {
    PadicInt x(3, 4, 18);
    CHECK(*x.valuation() == 2);
    CHECK(x.div_exact_p(2).residue() == 2);
    CHECK_THROWS_AS(PadicInt(3, 4, 1).div_exact_p(1), integrity_error);
    PadicInt y(3, 2, 5);
    CHECK((x + y).precision() == 2);
    CHECK_FALSE(PadicInt(3, 4, 81).valuation().has_value());  // zero residue
}

TEST_CASE("contraction coefficients: closed forms") {
    CHECK(up_coefficient(3, 2, 6) == 1);           // C^{n,np} = 1
    CHECK(up_coefficient(3, 4, 4) == 27);          // C^{m,m} = p^{m-1}
    CHECK(up_coefficient(3, 1, 2) == 2);           // (2/3) binom(3,2)
    CHECK(up_coefficient(2, 3, 5) == 5);  // (5/6) * W(3,5), W = 3 * C(2,1)C(2,2)^2
    CHECK_THROWS_AS(up_coefficient(3, 2, 1), validation_error);
    CHECK_THROWS_AS(up_coefficient(3, 2, 7), validation_error);
}

TEST_CASE("contraction coefficients: valuation sweep") {
    // p-integrality, the valuation lower bound, the unit criterion
    // n = ceil(m/p) and the unit residue are all asserted internally.
    for (int64_t p : {2, 3, 5})
        for (int64_t n = 1; n <= 8; ++n) CHECK_NOTHROW(up_coefficient_row(p, n));
}

TEST_CASE("gamma ring constant") {
    auto R = GammaRing::make(3, 2);
    // gamma^{p-1} is the scalar rho = -p + O(p^2); here rho = -3 mod 9
    CHECK(R->rho() % 9 == 6);
    CHECK(R->gamma_power(2) == R->from_scalar(R->rho()));
    CHECK(*R->gamma_power(2).valuation() == 1);
    auto R5 = GammaRing::make(5, 4);
    CHECK((R5->rho() + 5) % 25 == 0);  // rho = -p mod p^2
    CHECK(*R5->gamma_power(4).valuation() == 1);
}

TEST_CASE("gamma element valuations") {
    auto R = GammaRing::make(5, 4);
    CHECK(*R->one().valuation() == 0);
    CHECK(*R->gamma_power(1).valuation() == q(1, 4));
    CHECK(*R->gamma_power(3).valuation() == q(3, 4));
    // ultrametric minimum across distinct residues
    auto x = R->from_scalar(5) + R->gamma_power(1);
    CHECK(*x.valuation() == q(1, 4));
    CHECK_FALSE(R->zero().valuation().has_value());
}

TEST_CASE("gamma element arithmetic") {
    auto R = GammaRing::make(5, 6);
    auto g = R->gamma_power(1);
    auto a = g + R->one();
    auto b = g - R->one();
    CHECK(a * b == R->gamma_power(2) - R->one());
    // powers fold through the gamma^{p-1} relation
    CHECK(g * R->gamma_power(3) == R->from_scalar(R->rho()));
    CHECK(R->gamma_power(9) == R->gamma_power(1).scaled(R->rho() * R->rho()));
    // canonical reduction of a raw exponent map
    std::map<int64_t, mpz_class> raw{{0, 1}, {4, 1}};
    CHECK(R->reduce(raw) == R->from_scalar(1 + R->rho()));
}

TEST_CASE("splitting coefficients: structure") {
    auto S = dwork_setup(x_squared_f3(), 6);
    auto F = splitting_coefficients(S, 1, 8);
    CHECK(F[0] == S.ring->one());
    // f = x^2 with a_2 = 1, a_1 = 0: the Y^2 coefficient is gamma itself
    CHECK(F[1].is_zero());
    CHECK(close(F[2], S.ring->gamma_power(1)));
    CHECK(*F[2].valuation() == q(1, 2));  // ceil(2/2)/(p-1), equality case
    for (int64_t n = 1; n <= 8; ++n) {
        auto v = F[n].valuation();
        if (v) CHECK(*v >= q((n + 1) / 2, 2));
    }
}

TEST_CASE("splitting coefficients: linear pole") {
    // pole block of order 1 with coefficient 2: F_{j,1} = gamma * lift(2)
    auto F3 = Field::make(3, 1);
    auto f = RationalFunction::validate(
        F3, {inf_block(F3, {{0}, {1}}), finite_block(F3, {0}, {{2}})});
    auto S = dwork_setup(f, 6);
    auto F = splitting_coefficients(S, 2, 4);
    CHECK(F[0] == S.ring->one());
    CHECK(close(F[1], S.ring->gamma_power(1).scaled(S.coeff_lift[1][0])));
    CHECK(*F[1].valuation() == q(1, 2));
}

TEST_CASE("single-pole local expansion is a shifted splitting series") {
    auto S = dwork_setup(x_squared_f3(), 6);
    auto F = splitting_coefficients(S, 1, 12);
    for (int64_t i = 0; i <= 2; ++i) {
        auto H = local_expansion(S, 1, 1, i, 10);
        for (int64_t n = 0; n <= 10; ++n) {
            if (n - i < 0)
                CHECK(H[n].is_zero());
            else
                CHECK(close(H[n], F[n - i]));
        }
    }
}

TEST_CASE("two-pole local expansions match a direct convolution oracle") {
    // poles at infinity and 0: F(X) = F_1(x) F_2(1/x), so every local
    // coefficient is a convolution of the two splitting series.
    auto S = dwork_setup(amusing_f3(), 5);
    const auto& R = S.ring;
    const int64_t p = R->p();
    const int64_t tail = 2 * (p - 1) * (R->target_precision() + 2);
    auto F1 = splitting_coefficients(S, 1, tail + 20);
    auto F2 = splitting_coefficients(S, 2, tail + 20);
    // F_1[s] F_2[m] contributes x^{s-m}; multiplying by X_J^i adds +i
    // (J = 1) or -i (J = 2) to the exponent. Reading the coefficient of
    // x^n (J1 = 1) or x^{-n} (J1 = 2) pins s as a function of m.
    auto conv = [&](int64_t J1, int64_t J, int64_t n, int64_t i) {
        GammaElement acc = R->zero();
        for (int64_t m = 0; m <= tail; ++m) {
            int64_t s = (J1 == 1 ? n + m : m - n) + (J == 1 ? -i : i);
            if (s < 0 || s > tail + 20) continue;
            acc = acc + F1[s] * F2[m];
        }
        return acc;
    };
    for (int64_t J : {1, 2})
        for (int64_t i : {J == 1 ? 0 : 1, 2})
            for (int64_t J1 : {1, 2}) {
                auto H = local_expansion(S, J1, J, i, 6);
                for (int64_t n = (J1 == 1 ? 0 : 1); n <= 6; ++n) {
                    CAPTURE(J1);
                    CAPTURE(J);
                    CAPTURE(i);
                    CAPTURE(n);
                    CHECK(close(H[n], conv(J1, J, n, i)));
                }
            }
}

TEST_CASE("frobenius matrix of the quadratic instance") {
    auto f = x_squared_f3();
    const int64_t N = 6;
    auto M = frobenius_matrix(f, N);
    CHECK(M.violations.empty());
    auto S = dwork_setup(f, N);
    S.ring = M.ring;  // same parameters; share the ring so elements compare
    auto F = splitting_coefficients(S, 1, 3 * M.block_T[0] + 1);
    // single pole: B^{n,i} = F_{1, np - i}
    for (int64_t n = 0; n <= M.block_T[0]; ++n)
        for (int64_t i = 0; i <= M.block_T[0]; ++i) {
            int64_t e = 3 * n - i;
            auto& b = M.B[M.position(1, n)][M.position(1, i)];
            if (e < 0)
                CHECK(b.is_zero());
            else
                CHECK(close(b, F[e]));
        }
    // the constant-basis-vector row is exactly (1, 0, 0, ...)
    int64_t r0 = M.position(1, 0);
    CHECK(M.B[r0][r0] == S.ring->one());
    for (int64_t c = 1; c < M.dim(); ++c) CHECK(M.B[r0][c].is_zero());
}

TEST_CASE("weighted valuations shift by the basis exponents") {
    auto M = frobenius_matrix(x_squared_f3(), 6);
    int64_t r = M.position(1, 1), c = M.position(1, 1);
    auto v = M.B[r][c].valuation();
    REQUIRE(v.has_value());
    CHECK(*M.weighted_valuation(r, c) == *v);  // i = n cancels exactly
}

TEST_CASE("characteristic series of small matrices") {
    auto R = GammaRing::make(3, 6);
    auto b1 = R->gamma_power(1);
    auto b2 = R->one() + R->gamma_power(1);

    FrobeniusMatrix one;
    one.ring = R;
    one.d = {2};
    one.block_T = {0};
    one.index = {{1, 0}};
    one.B = {{b1}};
    auto C = fredholm_char_series(one, 1);
    CHECK(C[0] == R->zero() - b1);

    FrobeniusMatrix diag;
    diag.ring = R;
    diag.d = {2};
    diag.block_T = {1};
    diag.index = {{1, 0}, {1, 1}};
    diag.B = {{b1, R->zero()}, {R->zero(), b2}};
    auto D = fredholm_char_series(diag, 2);
    CHECK(D[0] == R->zero() - (b1 + b2));
    CHECK(D[1] == b1 * b2);

    // full 2x2 block: det(1 - TM) = 1 - tr(M) T + det(M) T^2
    auto m01 = R->gamma_power(2), m10 = R->one();
    FrobeniusMatrix full = diag;
    full.B = {{b1, m01}, {m10, b2}};
    auto E = fredholm_char_series(full, 2);
    CHECK(E[0] == R->zero() - (b1 + b2));
    CHECK(E[1] == b1 * b2 - m01 * m10);
}

TEST_CASE("characteristic series of a block-diagonal matrix factors") {
    auto R = GammaRing::make(3, 6);
    auto g = R->gamma_power(1);
    std::vector<std::vector<GammaElement>> A = {{g, R->one()}, {g * g, R->from_scalar(2)}};
    std::vector<std::vector<GammaElement>> Bb = {{R->from_scalar(3), g},
                                                 {R->one(), g + R->one()}};
    FrobeniusMatrix blockA, blockB, both;
    blockA.ring = blockB.ring = both.ring = R;
    blockA.d = blockB.d = both.d = {2};
    blockA.block_T = blockB.block_T = {1};
    both.block_T = {3};
    blockA.index = blockB.index = {{1, 0}, {1, 1}};
    both.index = {{1, 0}, {1, 1}, {1, 2}, {1, 3}};
    blockA.B = A;
    blockB.B = Bb;
    both.B.assign(4, std::vector<GammaElement>(4, R->zero()));
    for (int64_t i = 0; i < 2; ++i)
        for (int64_t j = 0; j < 2; ++j) {
            both.B[i][j] = A[i][j];
            both.B[2 + i][2 + j] = Bb[i][j];
        }
    auto CA = fredholm_char_series(blockA, 2);
    auto CB = fredholm_char_series(blockB, 2);
    auto CC = fredholm_char_series(both, 2);
    CHECK(CC[0] == CA[0] + CB[0]);
    CHECK(CC[1] == CA[1] + CB[1] + CA[0] * CB[0]);
}

TEST_CASE("newton polygon through the trace formula: quadratic") {
    auto res = dwork_newton_polygon(x_squared_f3());
    REQUIRE(res.np.vertices().size() == 2);
    CHECK(res.np.vertices()[1].x == 1);
    CHECK(res.np.vertices()[1].y == q(1, 2));
    CHECK(res.violations.empty());
}

TEST_CASE("newton polygon through the trace formula: two poles") {
    auto res = dwork_newton_polygon(amusing_f3());
    auto segs = res.np.slope_segments();
    REQUIRE(segs.size() == 3);
    CHECK(segs[0] == std::make_pair(q(0), int64_t(1)));
    CHECK(segs[1] == std::make_pair(q(1, 2), int64_t(2)));
    CHECK(segs[2] == std::make_pair(q(1), int64_t(1)));
    CHECK(res.violations.empty());
}

TEST_CASE("trace-formula polygon agrees with the direct computation") {
    for (auto f : {x_fourth_f3(), amusing_f3()}) {
        auto direct = newton_polygon(l_polynomial(f), 1);
        auto res = dwork_newton_polygon(f);
        CHECK(res.np == direct);
    }
}

TEST_CASE("p-adic pipeline requires a prime base field") {
    auto F9 = Field::make(3, 2);
    auto f = RationalFunction::validate(F9, {inf_block(F9, {{0, 0}, {1, 0}})});
    CHECK_THROWS_AS(dwork_newton_polygon(f), validation_error);
}

TEST_CASE("row-minima bound reproduces the polygon slopes below one") {
    for (auto orders : std::vector<std::vector<int64_t>>{{2}, {3}, {2, 2}}) {
        auto rc = hodge_bound_from_row_minima(orders);
        CHECK(rc.matches_hodge);
    }
    CHECK(hodge_bound_from_row_minima({2}).minima_prefix == std::vector<mpq_class>{q(1, 2)});
    CHECK(hodge_bound_from_row_minima({2, 2}).minima_prefix ==
          std::vector<mpq_class>{q(0), q(1, 2), q(1, 2)});
    CHECK(hodge_bound_from_row_minima({3}).minima_prefix ==
          std::vector<mpq_class>{q(1, 3), q(2, 3)});

    std::mt19937 rng(99);
    std::uniform_int_distribution<int64_t> ell_d(1, 4), ord_d(1, 6);
    int done = 0;
    while (done < 10) {
        std::vector<int64_t> orders(ell_d(rng));
        for (auto& o : orders) o = ord_d(rng);
        if (orders.size() == 1 && orders[0] == 1) continue;
        CAPTURE(orders);
        CHECK(hodge_bound_from_row_minima(orders).matches_hodge);
        ++done;
    }
}

TEST_CASE("diagonal-minimum diagnostics under the congruence criterion") {
    auto dq = equality_criterion_diagnostics(frobenius_matrix(x_squared_f3(), 6));
    CHECK(dq.criterion);
    CHECK(dq.diagonal_minima_unique);
    CHECK(dq.offending_blocks.empty());

    auto d4 = equality_criterion_diagnostics(frobenius_matrix(x_fourth_f3(), 7));
    CHECK_FALSE(d4.criterion);
    REQUIRE_FALSE(d4.offending_blocks.empty());
    CHECK(d4.offending_blocks[0] == 1);
    bool witness_found = false;
    for (const auto& w : d4.witnesses)
        if (w.J1 == 1 && w.n == 1 && w.i_n == 3) witness_found = true;
    CHECK(witness_found);  // 1*p = 3 mod 4 forces column 3, off-diagonal

    auto F5 = Field::make(5, 1);
    auto x4f5 = RationalFunction::validate(
        F5, {inf_block(F5, {{0}, {0}, {0}, {1}})});
    auto d5 = equality_criterion_diagnostics(frobenius_matrix(x4f5, 7));
    CHECK(d5.criterion);
    CHECK(d5.diagonal_minima_unique);
}
