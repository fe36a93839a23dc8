#ifndef EXSUM_CURVES_HPP
#define EXSUM_CURVES_HPP

#include "exsum/lseries.hpp"

namespace exsum {

/// Numerator of Zeta(C_f; T) for the cover y^p - y = f(x): the
/// integer polynomial N_{Q(zeta_p)/Q}(L), degree 2g = d(p-1),
/// constant term 1, low degree first.
struct ZetaNumerator {
    int64_t p = 0;
    int64_t a = 1;
    std::vector<mpz_class> coeffs;

    int64_t degree() const { return static_cast<int64_t>(coeffs.size()) - 1; }
    int64_t genus() const { return degree() / 2; }
    mpz_class q() const;

    /// coeff_{2g-i} = q^{g-i} coeff_i for all i.
    bool functional_equation_holds() const;

    /// #C(F_{q^k}) = 1 + q^k - (k-th power sum of inverse roots),
    /// by the integer Newton-identity recurrence on the coefficients.
    mpz_class point_count(int64_t k) const;
};

/// Product of Galois conjugates of L; asserts integrality.
ZetaNumerator zeta_numerator(const LPolynomial& L, int64_t a);

/// #C(F_{q^k}) = l + p * N_0(k) by character orthogonality.
int64_t point_count_direct(const RationalFunction& f, int64_t k,
                           int64_t cap = Field::kDefaultEnumerationCap);

/// Checks numerator point counts against direct counts for k <= k_max.
/// Returns true on full agreement; `first_bad_k` reports a mismatch.
bool zeta_consistency(const RationalFunction& f, const ZetaNumerator& num, int64_t k_max,
                      int64_t* first_bad_k = nullptr,
                      int64_t cap = Field::kDefaultEnumerationCap);

struct CurveInvariants {
    Polygon curve_np;  // normalized: ord_p(coeff)/a
    int64_t p_rank = 0;
};

CurveInvariants curve_np_and_prank(const ZetaNumerator& num);

}  // namespace exsum

#endif
