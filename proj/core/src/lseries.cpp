#include "exsum/lseries.hpp"

namespace exsum {

int64_t CountVector::total() const {
    int64_t t = 0;
    for (int64_t c : counts) t += c;
    return t;
}

CountVector exp_sum_counts(const RationalFunction& f, int64_t k, int64_t cap) {
    const auto& base = f.base();
    auto big = Field::make(base->p(), base->degree() * k);
    Embedding embed(base, big);

    // embed pole data once
    std::vector<std::optional<FieldElement>> pole_locs;
    std::vector<std::vector<FieldElement>> pole_coeffs;
    for (const auto& blk : f.poles()) {
        if (blk.at_infinity())
            pole_locs.emplace_back(std::nullopt);
        else
            pole_locs.emplace_back(embed(*blk.location));
        std::vector<FieldElement> cs;
        for (const auto& c : blk.coeffs) cs.push_back(embed(c));
        pole_coeffs.push_back(std::move(cs));
    }

    CountVector N;
    N.p = base->p();
    N.counts.assign(base->p(), 0);
    big->enumerate(
        [&](const FieldElement& x) {
            FieldElement acc = big->zero();
            for (size_t j = 0; j < pole_locs.size(); ++j) {
                FieldElement y = x;
                if (pole_locs[j]) {
                    y = big->sub(x, *pole_locs[j]);
                    if (y.is_zero()) return;  // g(x) = 0
                    y = big->inv(y);
                }
                FieldElement h = big->zero();
                for (int64_t i = static_cast<int64_t>(pole_coeffs[j].size()); i >= 1; --i) {
                    h = big->mul(h, y);
                    h = big->add(h, pole_coeffs[j][i - 1]);
                }
                acc = big->add(acc, big->mul(h, y));
            }
            ++N.counts[big->absolute_trace(acc)];
        },
        cap);
    return N;
}

CyclotomicInteger counts_to_sum(const CountVector& N) {
    CyclotomicInteger s(N.p);
    for (int64_t c = 0; c < N.p; ++c)
        s = s + CyclotomicInteger::zeta_power(N.p, c) *
                    CyclotomicInteger::from_int(N.p, N.counts[c]);
    return s;
}

CyclotomicInteger exp_sum(const RationalFunction& f, int64_t k, int64_t cap) {
    return counts_to_sum(exp_sum_counts(f, k, cap));
}

LPolynomial l_polynomial(const RationalFunction& f, bool paranoid, int64_t cap) {
    const int64_t p = f.base()->p();
    const int64_t d = f.degree();
    const int64_t k_max = paranoid ? d + 2 : d;

    std::vector<CyclotomicInteger> S;  // S[k-1] = S_k
    for (int64_t k = 1; k <= k_max; ++k) S.push_back(exp_sum(f, k, cap));

    std::vector<CyclotomicInteger> b = {CyclotomicInteger::from_int(p, 1)};
    for (int64_t n = 1; n <= k_max; ++n) {
        CyclotomicInteger acc(p);
        for (int64_t k = 1; k <= n; ++k) acc = acc + S[k - 1] * b[n - k];
        b.push_back(acc.exact_div(n));
    }
    for (int64_t n = d + 1; n <= k_max; ++n)
        if (!b[n].is_zero())
            throw integrity_error("L-polynomial coefficient beyond degree d is nonzero");
    b.resize(d + 1);
    if (b[d].is_zero()) throw integrity_error("leading L-coefficient b_d vanishes");

    LPolynomial L;
    L.p = p;
    L.coeffs = std::move(b);
    return L;
}

Polygon newton_polygon(const LPolynomial& L, int64_t a) {
    std::vector<std::pair<int64_t, std::optional<mpq_class>>> pts;
    for (int64_t n = 0; n <= L.degree(); ++n) {
        auto v = L.coeffs[n].ord_p();
        if (v) {
            mpq_class y = *v / a;
            y.canonicalize();
            pts.emplace_back(n, y);
        } else {
            pts.emplace_back(n, std::nullopt);
        }
    }
    Polygon np = lower_hull(pts);
    mpq_class end(L.degree(), 2);
    end.canonicalize();
    if (np.vertices().back().y != end)
        throw integrity_error("Newton polygon endpoint ord_q(b_d) != d/2");
    return np;
}

TheoremVerdict theorem_verdict(const RationalFunction& f, const Polygon& np) {
    Polygon hp = hodge_polygon(f.orders());
    TheoremVerdict v;
    v.lies_over = lies_over(np, hp);
    v.equals = (np == hp);
    v.criterion = (f.base()->p() % f.lcm_orders() == 1 % f.lcm_orders());
    return v;
}

}  // namespace exsum
