#include "exsum/gamma_ring.hpp"

namespace exsum {

GammaElement::GammaElement(GammaRingPtr ring, std::vector<mpz_class> c)
    : ring_(std::move(ring)), c_(std::move(c)) {
    if (c_.size() != static_cast<size_t>(ring_->p() - 1))
        throw validation_error("gamma element has wrong coefficient count");
    for (auto& v : c_) v = ring_->reduce_scalar(v);
}

bool GammaElement::is_zero() const {
    for (const auto& v : c_)
        if (v != 0) return false;
    return true;
}

bool GammaElement::operator==(const GammaElement& o) const {
    if (ring_ != o.ring_) throw validation_error("gamma ring mismatch");
    return c_ == o.c_;
}

GammaElement GammaElement::operator+(const GammaElement& o) const {
    if (ring_ != o.ring_) throw validation_error("gamma ring mismatch");
    std::vector<mpz_class> r(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] + o.c_[k];
    return GammaElement(ring_, std::move(r));
}

GammaElement GammaElement::operator-(const GammaElement& o) const {
    if (ring_ != o.ring_) throw validation_error("gamma ring mismatch");
    std::vector<mpz_class> r(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] - o.c_[k];
    return GammaElement(ring_, std::move(r));
}

GammaElement GammaElement::operator*(const GammaElement& o) const {
    if (ring_ != o.ring_) throw validation_error("gamma ring mismatch");
    const size_t n = c_.size();  // p - 1
    std::vector<mpz_class> conv(2 * n - 1);
    for (size_t i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) conv[i + j] += c_[i] * o.c_[j];
    }
    // fold gamma^{p-1+k} = rho * gamma^k
    std::vector<mpz_class> r(n);
    for (size_t k = 0; k < n; ++k) {
        r[k] = conv[k];
        if (n + k < conv.size()) r[k] += ring_->rho() * conv[n + k];
    }
    return GammaElement(ring_, std::move(r));
}

GammaElement GammaElement::scaled(const mpz_class& s) const {
    std::vector<mpz_class> r(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] * s;
    return GammaElement(ring_, std::move(r));
}

std::optional<mpq_class> GammaElement::valuation() const {
    const int64_t p = ring_->p();
    std::optional<mpq_class> best;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        mpq_class v(ord_p_int(c_[k], p), 1);
        v += mpq_class(static_cast<long>(k), static_cast<long>(p - 1));
        v.canonicalize();
        if (!best || v < *best) best = v;
    }
    if (!best || *best >= ring_->target_precision()) return std::nullopt;
    return best;
}

GammaRing::GammaRing(int64_t p, int64_t N) : p_(p), N_(N) {
    if (!(p >= 2) || N < 2) throw validation_error("bad gamma ring parameters");
    N_work_ = N + 4;
    mod_ = pow_int(p, N_work_);
    compute_rho();
}

void GammaRing::compute_rho() {
    // Fixed point of x = -p - sum_{i>=2} x^{s_i}/p^{i-1}, s_i = (p^i-1)/(p-1),
    // run at extended precision so the divisions keep N_work_ digits.
    const int64_t big = N_work_ + 8;
    const mpz_class bigmod = pow_int(p_, big);
    mpz_class x = bigmod - p_;
    for (int64_t it = 0; it < 64; ++it) {
        mpz_class next = bigmod - p_;
        int64_t s = 1;  // s_i
        mpz_class pi1 = 1;
        for (int64_t i = 2;; ++i) {
            s = s * p_ + 1;
            pi1 *= p_;
            if (s - (i - 1) >= big) break;
            mpz_class t;
            mpz_powm_ui(t.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(s),
                        bigmod.get_mpz_t());
            if (!mpz_divisible_p(t.get_mpz_t(), pi1.get_mpz_t()))
                throw integrity_error("inexact division while reducing gamma^{p-1}");
            next -= t / pi1;
        }
        mpz_mod(next.get_mpz_t(), next.get_mpz_t(), bigmod.get_mpz_t());
        if (next == x) {
            mpz_mod(rho_.get_mpz_t(), x.get_mpz_t(), mod_.get_mpz_t());
            return;
        }
        x = next;
    }
    throw integrity_error("gamma^{p-1} fixed point failed to stabilize");
}

GammaRingPtr GammaRing::make(int64_t p, int64_t target_precision) {
    return GammaRingPtr(new GammaRing(p, target_precision));
}

mpz_class GammaRing::reduce_scalar(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
    return r;
}

mpz_class GammaRing::invert_unit(const mpz_class& v) const {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t()))
        throw integrity_error("expected p-adic unit is not invertible");
    return r;
}

GammaElement GammaRing::zero() const {
    return GammaElement(shared_from_this(), std::vector<mpz_class>(p_ - 1));
}

GammaElement GammaRing::one() const { return from_scalar(1); }

GammaElement GammaRing::from_scalar(const mpz_class& v) const {
    std::vector<mpz_class> c(p_ - 1);
    c[0] = v;
    return GammaElement(shared_from_this(), std::move(c));
}

GammaElement GammaRing::from_rational(const mpq_class& v) const {
    mpz_class den_inv = invert_unit(v.get_den());
    return from_scalar(v.get_num() * den_inv);
}

GammaElement GammaRing::gamma_power(int64_t e) const {
    if (e < 0) throw validation_error("negative gamma exponent");
    std::vector<mpz_class> c(p_ - 1);
    mpz_class scale;
    mpz_powm_ui(scale.get_mpz_t(), rho_.get_mpz_t(),
                static_cast<unsigned long>(e / (p_ - 1)), mod_.get_mpz_t());
    c[e % (p_ - 1)] = scale;
    return GammaElement(shared_from_this(), std::move(c));
}

GammaElement GammaRing::reduce(const std::map<int64_t, mpz_class>& raw) const {
    GammaElement acc = zero();
    for (const auto& [e, v] : raw) acc = acc + gamma_power(e).scaled(v);
    return acc;
}

}  // namespace exsum
