#include "exsum/curves.hpp"

namespace exsum {

mpz_class ZetaNumerator::q() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(a));
    return r;
}

bool ZetaNumerator::functional_equation_holds() const {
    const int64_t g = genus();
    const mpz_class qq = q();
    for (int64_t i = 0; i <= g; ++i) {
        mpz_class qpow;
        mpz_pow_ui(qpow.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(g - i));
        if (coeffs[2 * g - i] != qpow * coeffs[i]) return false;
    }
    return true;
}

mpz_class ZetaNumerator::point_count(int64_t k) const {
    // power sums of inverse roots of P(T) = sum c_j T^j:
    // s_k = -k c_k - sum_{j=1}^{k-1} c_j s_{k-j}
    std::vector<mpz_class> s(k + 1);
    for (int64_t m = 1; m <= k; ++m) {
        mpz_class acc = 0;
        if (m <= degree()) acc = -mpz_class(m) * coeffs[m];
        for (int64_t j = 1; j < m; ++j)
            if (j <= degree()) acc -= coeffs[j] * s[m - j];
        s[m] = acc;
    }
    mpz_class qk;
    mpz_pow_ui(qk.get_mpz_t(), q().get_mpz_t(), static_cast<unsigned long>(k));
    return 1 + qk - s[k];
}

ZetaNumerator zeta_numerator(const LPolynomial& L, int64_t a) {
    const int64_t p = L.p;
    // product over t of sigma_t(L), in Z[zeta_p][T]
    std::vector<CyclotomicInteger> prod = {CyclotomicInteger::from_int(p, 1)};
    for (int64_t t = 1; t <= p - 1; ++t) {
        std::vector<CyclotomicInteger> factor;
        for (const auto& b : L.coeffs) factor.push_back(b.galois(t));
        std::vector<CyclotomicInteger> next(prod.size() + factor.size() - 1,
                                            CyclotomicInteger(p));
        for (size_t i = 0; i < prod.size(); ++i)
            for (size_t j = 0; j < factor.size(); ++j)
                next[i + j] = next[i + j] + prod[i] * factor[j];
        prod = std::move(next);
    }
    ZetaNumerator num;
    num.p = p;
    num.a = a;
    for (const auto& c : prod) {
        auto v = c.as_integer();
        if (!v) throw integrity_error("zeta numerator coefficient is not a rational integer");
        num.coeffs.push_back(*v);
    }
    if (num.coeffs.empty() || num.coeffs[0] != 1)
        throw integrity_error("zeta numerator constant term != 1");
    return num;
}

int64_t point_count_direct(const RationalFunction& f, int64_t k, int64_t cap) {
    CountVector N = exp_sum_counts(f, k, cap);
    return f.pole_count() + f.base()->p() * N.counts[0];
}

bool zeta_consistency(const RationalFunction& f, const ZetaNumerator& num, int64_t k_max,
                      int64_t* first_bad_k, int64_t cap) {
    for (int64_t k = 1; k <= k_max; ++k) {
        if (num.point_count(k) != point_count_direct(f, k, cap)) {
            if (first_bad_k) *first_bad_k = k;
            return false;
        }
    }
    return true;
}

CurveInvariants curve_np_and_prank(const ZetaNumerator& num) {
    std::vector<std::pair<int64_t, std::optional<mpq_class>>> pts;
    const mpz_class pz(num.p);
    for (int64_t n = 0; n <= num.degree(); ++n) {
        if (num.coeffs[n] == 0) {
            pts.emplace_back(n, std::nullopt);
            continue;
        }
        mpz_class v = num.coeffs[n];
        int64_t vp = 0;
        while (mpz_divisible_p(v.get_mpz_t(), pz.get_mpz_t())) {
            v /= pz;
            ++vp;
        }
        mpq_class y(vp, num.a);
        y.canonicalize();
        pts.emplace_back(n, y);
    }
    CurveInvariants inv;
    inv.curve_np = lower_hull(pts);
    inv.p_rank = 0;
    auto segs = inv.curve_np.slope_segments();
    if (!segs.empty() && segs[0].first == 0) inv.p_rank = segs[0].second;
    return inv;
}

}  // namespace exsum
