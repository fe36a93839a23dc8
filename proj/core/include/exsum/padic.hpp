#ifndef EXSUM_PADIC_HPP
#define EXSUM_PADIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "exsum/errors.hpp"

namespace exsum {

/// p^e as an exact integer.
mpz_class pow_int(int64_t p, int64_t e);

/// v_p of a nonzero integer.
int64_t ord_p_int(const mpz_class& v, int64_t p);

/// v_p of a nonzero rational (negative when p divides the denominator).
int64_t ord_p_rat(const mpq_class& v, int64_t p);

/// Truncated p-adic integer: a residue in [0, p^prec).
class PadicInt {
public:
    PadicInt() = default;
    PadicInt(int64_t p, int64_t prec, const mpz_class& value);

    int64_t p() const { return p_; }
    int64_t precision() const { return prec_; }
    const mpz_class& residue() const { return r_; }
    bool is_zero() const { return r_ == 0; }

    /// Precision of the result is the minimum of the operands'.
    PadicInt operator+(const PadicInt& o) const;
    PadicInt operator-(const PadicInt& o) const;
    PadicInt operator*(const PadicInt& o) const;

    /// Divide by p^k; throws integrity_error when the residue is not
    /// divisible. Precision drops by k.
    PadicInt div_exact_p(int64_t k) const;

    /// v_p of the residue; nullopt when the residue vanishes (the true
    /// valuation is then only known to be >= precision).
    std::optional<int64_t> valuation() const;

private:
    void check_compatible(const PadicInt& o) const;

    int64_t p_ = 0;
    int64_t prec_ = 0;
    mpz_class r_;
};

/// The unique lift of `abar` with x^p = x mod p^prec, by iterating
/// x -> x^p to stabilization.
PadicInt teichmuller_lift(int64_t p, int64_t abar, int64_t prec);

/// Image of a rational with p-free denominator in Z/p^prec.
PadicInt padic_from_rational(const mpq_class& v, int64_t p, int64_t prec);

/// Coefficients e_0..e_n_max of exp(sum_{p^i <= n_max} x^{p^i}/p^i),
/// exact rationals, via the recurrence n e_n = sum_{p^i <= n} e_{n-p^i}.
/// Every coefficient is checked p-integral.
std::vector<mpq_class> artin_hasse_coefficients(int64_t p, int64_t n_max);

/// C^{n,m} = (m/(np)) * sum over compositions (i_1..i_n) of m with
/// 1 <= i_k <= p of prod binom(p, i_k), by dynamic programming over
/// partial sums. Checks: p-integral; ord_p >= (np-m)/(p-1) - 1; unit
/// iff n = ceil(m/p), and then congruent to (-1)^{eps-1} mod p with
/// eps = m - (n-1)p.
mpq_class up_coefficient(int64_t p, int64_t n, int64_t m);

/// All of C^{n,n}..C^{n,np} from one DP table.
std::vector<mpq_class> up_coefficient_row(int64_t p, int64_t n);

}  // namespace exsum

#endif
