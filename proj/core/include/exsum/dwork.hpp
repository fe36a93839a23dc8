#ifndef EXSUM_DWORK_HPP
#define EXSUM_DWORK_HPP

#include <string>

#include "exsum/gamma_ring.hpp"
#include "exsum/polygon.hpp"
#include "exsum/rational_function.hpp"

namespace exsum {

/// Teichmuller-lifted data of a normalized rational function over F_p
/// (prime field only). Pole 1 is infinity; when there are finite poles
/// the first one sits at 0.
struct DworkSetup {
    GammaRingPtr ring;
    std::vector<int64_t> d;                          // pole orders d_1..d_l
    std::vector<mpz_class> pole_lift;                // per pole; slot 0 unused
    std::vector<std::vector<mpz_class>> coeff_lift;  // lifts of a_{j,1..d_j}
};

DworkSetup dwork_setup(const RationalFunction& f, int64_t precision);

/// F_{j,0..n_max}: coefficients of F_j(Y) = prod_i E(gamma ahat_{j,i} Y^i)
/// where E is the Artin-Hasse series. 1-based pole index.
std::vector<GammaElement> splitting_coefficients(const DworkSetup& S, int64_t j,
                                                 int64_t n_max);

/// H^{0..n_max, i}_{J1,J}: the component at pole J1 of F(X) X_J^i as a
/// power series in the local basis X_{J1} (X_1 = x at infinity,
/// X_j = (x - P_j)^{-1} at finite poles). 1-based pole indices.
std::vector<GammaElement> local_expansion(const DworkSetup& S, int64_t J1, int64_t J,
                                          int64_t i, int64_t n_max);

struct BoundViolation {
    std::string kind;
    int64_t J1 = 0, J = 0, n = 0, i = 0;
    std::string detail;
};

/// Matrix of U_p . F(X) in the basis {X_1^n : n >= 0} u {X_j^n : n >= 1},
/// truncated per block at n <= block_T[j]. Rows and columns share the
/// same index list.
struct FrobeniusMatrix {
    GammaRingPtr ring;
    std::vector<int64_t> d;
    std::vector<int64_t> block_T;
    std::vector<std::pair<int64_t, int64_t>> index;  // (J1, n), J1 1-based
    std::vector<std::vector<GammaElement>> B;
    std::vector<BoundViolation> violations;

    int64_t dim() const { return static_cast<int64_t>(index.size()); }
    int64_t position(int64_t J1, int64_t n) const;  // -1 when absent
    /// ord_p of the entry in the weighted basis Z_j = gamma^{1/d_j} X_j:
    /// ord B + (i/d_J - n/d_{J1})/(p-1). nullopt: only known >= N + shift.
    std::optional<mpq_class> weighted_valuation(int64_t row, int64_t col) const;
};

/// Builds the matrix at the given working precision and records every
/// violation of the valuation bounds (splitting coefficients, local
/// expansions, unweighted and weighted entry estimates, and the stated
/// equality cases).
FrobeniusMatrix frobenius_matrix(const RationalFunction& f, int64_t precision);

/// C_1..C_t of det(1 - T M) mod T^{t+1}, by elimination over the
/// truncated series ring: pivots are 1 + O(T) and are inverted as power
/// series, so no coefficient divisions occur. `skip` removes one basis
/// row and column (-1: keep all).
std::vector<GammaElement> fredholm_char_series(const FrobeniusMatrix& M, int64_t t,
                                               int64_t skip = -1);

struct DworkConfig {
    int64_t precision = 0;  // 0: default d + 4
    int64_t max_rounds = 4;
};

struct DworkResult {
    Polygon np;  // full Newton polygon, slope-1 part appended
    int64_t precision_used = 0;
    int64_t t_max_used = 0;
    std::vector<BoundViolation> violations;
};

/// Newton polygon of L(f;T) computed through the p-adic trace formula:
/// lower hull of (k, ord_p C_k) for k <= d - l + 1, extended by l - 1
/// slope-1 segments. Recomputes with doubled precision until the
/// polygon stabilizes. Requires a = 1.
DworkResult dwork_newton_polygon(const RationalFunction& f, DworkConfig cfg = {});

struct RowMinimaCheck {
    std::vector<mpq_class> minima_prefix;  // d - l + 1 smallest row minima
    bool matches_hodge = false;
};

/// Symbolic row-minimum multiset of the weighted matrix: n/d_{J1} for
/// J1 in {1,2}, (n-1)/d_{J1} for J1 >= 3 (n >= 1 except J1 = 1, which
/// starts at 0 when l > 1). The sorted prefix of length d - l + 1 must
/// reproduce the slope < 1 multiset of the Hodge polygon.
RowMinimaCheck hodge_bound_from_row_minima(const std::vector<int64_t>& orders);

struct EqualityWitness {
    int64_t J1 = 0;
    int64_t n = 0;
    int64_t i_n = 0;  // column index forced by np = i_n mod d_{J1}
};

struct EqualityDiagnostics {
    bool criterion = false;  // p = 1 mod lcm d_j
    bool diagonal_minima_unique = false;
    std::vector<int64_t> offending_blocks;
    std::vector<EqualityWitness> witnesses;
};

/// Inspects the rows of M_{<1}: when p = 1 mod lcm d_j, checks that each
/// row minimum is achieved uniquely at the diagonal column of its own
/// block; otherwise reports the blocks with p != 1 mod d_{J1} and the
/// rows whose forced minimal column differs from the diagonal.
EqualityDiagnostics equality_criterion_diagnostics(const FrobeniusMatrix& M);

}  // namespace exsum

#endif
