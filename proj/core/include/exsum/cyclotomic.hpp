#ifndef EXSUM_CYCLOTOMIC_HPP
#define EXSUM_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "exsum/errors.hpp"

namespace exsum {

/// Element of Z[zeta_p] in the reduced power basis 1, zeta, ...,
/// zeta^{p-2}; higher powers are folded back through
/// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
class CyclotomicInteger {
public:
    CyclotomicInteger() = default;
    explicit CyclotomicInteger(int64_t p);
    CyclotomicInteger(int64_t p, std::vector<mpz_class> coeffs);

    static CyclotomicInteger from_int(int64_t p, const mpz_class& v);
    /// zeta^e for any e >= 0, reduced.
    static CyclotomicInteger zeta_power(int64_t p, int64_t e);

    int64_t p() const { return p_; }
    /// u_j for j in [0, p-2]
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool operator==(const CyclotomicInteger& o) const;
    bool operator!=(const CyclotomicInteger& o) const { return !(*this == o); }

    CyclotomicInteger operator+(const CyclotomicInteger& o) const;
    CyclotomicInteger operator-(const CyclotomicInteger& o) const;
    CyclotomicInteger operator*(const CyclotomicInteger& o) const;

    /// Galois automorphism zeta -> zeta^t, gcd(t, p) = 1.
    CyclotomicInteger galois(int64_t t) const;

    /// Rational integer content, if u_1 = ... = u_{p-2} = 0.
    std::optional<mpz_class> as_integer() const;

    /// Exact divide every coefficient by n; throws integrity_error if
    /// not exact.
    CyclotomicInteger exact_div(const mpz_class& n) const;

    /// ord_p normalized so ord_p(p) = 1; nullopt for the zero element.
    /// Computed by substituting zeta = 1 - pi and taking
    /// min_i (v_p(c_i) + i/(p-1)), which is exact because the
    /// candidates have pairwise distinct values of (p-1)*value mod p-1.
    std::optional<mpq_class> ord_p() const;

private:
    void check_compatible(const CyclotomicInteger& o) const;

    int64_t p_ = 0;
    std::vector<mpz_class> coeffs_;  // size p-1
};

}  // namespace exsum

#endif
