#ifndef EXSUM_GAMMA_RING_HPP
#define EXSUM_GAMMA_RING_HPP

#include <map>
#include <memory>

#include "exsum/padic.hpp"

namespace exsum {

class GammaRing;
using GammaRingPtr = std::shared_ptr<const GammaRing>;

/// Element of Z_p[gamma] written as sum_{k=0}^{p-2} c_k gamma^k with
/// the scalars c_k truncated mod p^{N_work}. gamma is a root of
/// log E(x) with ord_p gamma = 1/(p-1); the ring replaces gamma^{p-1}
/// by the scalar rho it equals (see GammaRing::rho).
class GammaElement {
public:
    GammaElement() = default;
    GammaElement(GammaRingPtr ring, std::vector<mpz_class> c);

    const GammaRingPtr& ring() const { return ring_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const GammaElement& o) const;
    bool operator!=(const GammaElement& o) const { return !(*this == o); }

    GammaElement operator+(const GammaElement& o) const;
    GammaElement operator-(const GammaElement& o) const;
    GammaElement operator*(const GammaElement& o) const;
    GammaElement scaled(const mpz_class& s) const;

    /// min_k (v_p(c_k) + k/(p-1)); exact when the minimum is below the
    /// ring's certified precision N (the candidate values have pairwise
    /// distinct residues of (p-1)*value mod p-1), reported as nullopt
    /// ("valuation >= N") otherwise.
    std::optional<mpq_class> valuation() const;

private:
    GammaRingPtr ring_;
    std::vector<mpz_class> c_;  // size p-1, reduced mod p^{N_work}
};

/// Z_p[gamma] with scalar arithmetic mod p^{N_work}, N_work = N + 4.
/// Valuations below the target precision N are certified exact.
class GammaRing : public std::enable_shared_from_this<GammaRing> {
public:
    static GammaRingPtr make(int64_t p, int64_t target_precision);

    int64_t p() const { return p_; }
    /// N: valuations are certified when strictly below this.
    int64_t target_precision() const { return N_; }
    int64_t working_precision() const { return N_work_; }
    const mpz_class& modulus() const { return mod_; }
    /// The scalar value of gamma^{p-1}: the unique fixed point of
    /// x = -p - sum_{i>=2} x^{(p^i-1)/(p-1)} / p^{i-1} in p + p^2 Z_p,
    /// obtained by rewriting log E(gamma) = 0. rho = -p + O(p^p).
    const mpz_class& rho() const { return rho_; }

    GammaElement zero() const;
    GammaElement one() const;
    GammaElement from_scalar(const mpz_class& v) const;
    GammaElement from_rational(const mpq_class& v) const;
    /// gamma^e for e >= 0, folded through gamma^{p-1} = rho.
    GammaElement gamma_power(int64_t e) const;
    /// Canonical form of sum_e coeff(e) * gamma^e.
    GammaElement reduce(const std::map<int64_t, mpz_class>& raw) const;

    mpz_class reduce_scalar(const mpz_class& v) const;
    /// Inverse of a p-adic unit mod p^{N_work}; throws if not a unit.
    mpz_class invert_unit(const mpz_class& v) const;

private:
    GammaRing(int64_t p, int64_t N);
    void compute_rho();

    int64_t p_ = 0;
    int64_t N_ = 0;
    int64_t N_work_ = 0;
    mpz_class mod_;
    mpz_class rho_;
};

}  // namespace exsum

#endif
