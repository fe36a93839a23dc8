#include "exsum/cyclotomic.hpp"

#include <algorithm>

namespace exsum {

CyclotomicInteger::CyclotomicInteger(int64_t p) : p_(p), coeffs_(p - 1, mpz_class(0)) {
    if (p < 2) throw validation_error("cyclotomic base prime must be >= 2");
}

CyclotomicInteger::CyclotomicInteger(int64_t p, std::vector<mpz_class> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
    if (static_cast<int64_t>(coeffs_.size()) != p - 1)
        throw validation_error("cyclotomic coefficient vector must have length p-1");
}

CyclotomicInteger CyclotomicInteger::from_int(int64_t p, const mpz_class& v) {
    CyclotomicInteger r(p);
    r.coeffs_[0] = v;
    return r;
}

CyclotomicInteger CyclotomicInteger::zeta_power(int64_t p, int64_t e) {
    CyclotomicInteger r(p);
    e %= p;
    if (e < 0) e += p;
    if (e <= p - 2) {
        r.coeffs_[e] = 1;
    } else {
        for (auto& c : r.coeffs_) c = -1;  // zeta^{p-1}
    }
    return r;
}

bool CyclotomicInteger::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpz_class& c) { return c == 0; });
}

bool CyclotomicInteger::operator==(const CyclotomicInteger& o) const {
    return p_ == o.p_ && coeffs_ == o.coeffs_;
}

void CyclotomicInteger::check_compatible(const CyclotomicInteger& o) const {
    if (p_ != o.p_) throw validation_error("cyclotomic prime mismatch");
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
    check_compatible(o);
    CyclotomicInteger r(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-(const CyclotomicInteger& o) const {
    check_compatible(o);
    CyclotomicInteger r(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator*(const CyclotomicInteger& o) const {
    check_compatible(o);
    // convolve with exponents mod p, then remove the zeta^{p-1} slot
    std::vector<mpz_class> v(p_, mpz_class(0));
    for (int64_t i = 0; i < p_ - 1; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int64_t j = 0; j < p_ - 1; ++j) {
            if (o.coeffs_[j] == 0) continue;
            v[(i + j) % p_] += coeffs_[i] * o.coeffs_[j];
        }
    }
    CyclotomicInteger r(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) r.coeffs_[i] = v[i] - v[p_ - 1];
    return r;
}

CyclotomicInteger CyclotomicInteger::galois(int64_t t) const {
    t %= p_;
    if (t < 0) t += p_;
    if (t == 0) throw validation_error("galois exponent must be coprime to p");
    std::vector<mpz_class> v(p_, mpz_class(0));
    for (int64_t i = 0; i < p_ - 1; ++i) v[i * t % p_] += coeffs_[i];
    CyclotomicInteger r(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) r.coeffs_[i] = v[i] - v[p_ - 1];
    return r;
}

std::optional<mpz_class> CyclotomicInteger::as_integer() const {
    for (int64_t i = 1; i < p_ - 1; ++i)
        if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_[0];
}

CyclotomicInteger CyclotomicInteger::exact_div(const mpz_class& n) const {
    CyclotomicInteger r(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), coeffs_[i].get_mpz_t(), n.get_mpz_t());
        if (rem != 0) throw integrity_error("inexact cyclotomic division");
        r.coeffs_[i] = q;
    }
    return r;
}

std::optional<mpq_class> CyclotomicInteger::ord_p() const {
    if (is_zero()) return std::nullopt;
    // c_i = (-1)^i sum_{j>=i} u_j C(j,i), the pi-basis coefficients
    // from zeta = 1 - pi
    std::vector<mpz_class> c(p_ - 1, mpz_class(0));
    for (int64_t i = 0; i < p_ - 1; ++i) {
        mpz_class acc = 0;
        for (int64_t j = i; j < p_ - 1; ++j) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(j),
                         static_cast<unsigned long>(i));
            acc += coeffs_[j] * b;
        }
        c[i] = (i % 2 == 0) ? acc : -acc;
    }
    std::optional<mpq_class> best;
    mpz_class pz(p_);
    for (int64_t i = 0; i < p_ - 1; ++i) {
        if (c[i] == 0) continue;
        mpz_class v = c[i];
        int64_t vp = 0;
        while (mpz_divisible_p(v.get_mpz_t(), pz.get_mpz_t())) {
            v /= pz;
            ++vp;
        }
        mpq_class cand = mpq_class(vp) + mpq_class(i, p_ - 1);
        cand.canonicalize();
        if (!best || cand < *best) best = cand;
    }
    if (!best) throw integrity_error("nonzero element with zero pi-expansion");
    return best;
}

}  // namespace exsum
