#include "exsum/dwork.hpp"

#include <algorithm>
#include <numeric>

namespace exsum {

namespace {

// ---- truncated two-sided Laurent series over the gamma ring ----

struct Window {
    int64_t lo = 0;
    int64_t hi = 0;
};

struct Laurent {
    int64_t lo = 0;
    std::vector<GammaElement> c;  // exponent e at c[e - lo]
};

Laurent zero_series(const GammaRingPtr& R, Window w) {
    Laurent L;
    L.lo = w.lo;
    L.c.assign(static_cast<size_t>(w.hi - w.lo + 1), R->zero());
    return L;
}

void add_at(Laurent& L, int64_t e, const GammaElement& v) {
    if (e < L.lo || e - L.lo >= static_cast<int64_t>(L.c.size())) return;
    L.c[e - L.lo] = L.c[e - L.lo] + v;
}

GammaElement coeff(const Laurent& L, int64_t e, const GammaRingPtr& R) {
    if (e < L.lo || e - L.lo >= static_cast<int64_t>(L.c.size())) return R->zero();
    return L.c[e - L.lo];
}

std::vector<int64_t> support(const Laurent& L) {
    std::vector<int64_t> s;
    for (size_t k = 0; k < L.c.size(); ++k)
        if (!L.c[k].is_zero()) s.push_back(L.lo + static_cast<int64_t>(k));
    return s;
}

Laurent mul(const Laurent& A, const Laurent& B, Window w, const GammaRingPtr& R) {
    auto sa = support(A);
    auto sb = support(B);
    Laurent out = zero_series(R, w);
    if (sb.size() == 1) {  // monomial: shift and scale
        const GammaElement& m = B.c[sb[0] - B.lo];
        for (int64_t e : sa) add_at(out, e + sb[0], A.c[e - A.lo] * m);
        return out;
    }
    for (int64_t ea : sa) {
        const GammaElement& va = A.c[ea - A.lo];
        for (int64_t eb : sb) {
            const int64_t e = ea + eb;
            if (e < w.lo || e > w.hi) continue;
            out.c[e - out.lo] = out.c[e - out.lo] + va * B.c[eb - B.lo];
        }
    }
    return out;
}

// ---- local expansions of the splitting-function product ----

struct Expander {
    const DworkSetup& S;
    int64_t J1;  // 1-based
    Window w;
    GammaRingPtr R;
    int64_t ell = 0;
    int64_t p = 0;
    std::vector<int64_t> Mdeg;                  // series truncation per pole
    std::vector<std::vector<GammaElement>> Fs;  // splitting coefficients
    Laurent G;                                  // product of factor expansions

    // read_max: largest |exponent| extracted; colcap: largest monomial
    // power multiplied on afterwards.
    Expander(const DworkSetup& setup, int64_t J1_, int64_t read_max, int64_t colcap)
        : S(setup), J1(J1_), R(setup.ring) {
        ell = static_cast<int64_t>(S.d.size());
        p = R->p();
        const int64_t Ntr = R->target_precision() + 2;
        Mdeg.resize(ell);
        for (int64_t j = 0; j < ell; ++j) Mdeg[j] = S.d[j] * (p - 1) * Ntr;
        // Window large enough that every truncated-series term able to
        // reach the read range survives: the bounded-support factors
        // contribute at most A upward / B downward, and each series with
        // unbounded tail only matters within that reach.
        const int64_t A = Mdeg[0] + colcap;
        if (J1 == 1) {
            w.lo = -ell * A;
            w.hi = read_max + ell * A;
        } else {
            const int64_t Bneg = Mdeg[J1 - 1] + colcap;
            w.lo = -read_max - (A + ell * Bneg);
            w.hi = Bneg + A + ell * Bneg;
        }
        for (int64_t j = 1; j <= ell; ++j)
            Fs.push_back(splitting_coefficients(S, j, Mdeg[j - 1]));
        G = factor_expansion(1);
        for (int64_t j = 2; j <= ell; ++j) G = mul(G, factor_expansion(j), w, R);
    }

    // Expansion of F_j(X_j) in the local parameter at pole J1
    // (x at infinity, v = x - P_{J1} at finite poles).
    Laurent factor_expansion(int64_t j) const {
        Laurent L = zero_series(R, w);
        const auto& F = Fs[j - 1];
        const int64_t Mj = Mdeg[j - 1];
        if (j == J1) {
            const int64_t sign = (J1 == 1) ? 1 : -1;
            for (int64_t m = 0; m <= Mj; ++m)
                if (!F[m].is_zero()) add_at(L, sign * m, F[m]);
            return L;
        }
        if (J1 == 1) {
            // (x - P)^{-m} = sum_k binom(m+k-1, k) P^k x^{-m-k}
            const mpz_class& P = S.pole_lift[j - 1];
            for (int64_t m = 0; m <= Mj; ++m) {
                if (F[m].is_zero()) continue;
                if (m == 0) {
                    add_at(L, 0, F[m]);
                    continue;
                }
                if (P == 0) {
                    add_at(L, -m, F[m]);
                    continue;
                }
                mpz_class bin = 1, Pk = 1;
                for (int64_t k = 0; -m - k >= w.lo; ++k) {
                    if (k > 0) {
                        bin *= m + k - 1;
                        mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(),
                                        static_cast<unsigned long>(k));
                        Pk = R->reduce_scalar(Pk * P);
                    }
                    add_at(L, -m - k, F[m].scaled(bin * Pk));
                }
            }
            return L;
        }
        if (j == 1) {
            // x^m = (v + P)^m
            const mpz_class& P = S.pole_lift[J1 - 1];
            for (int64_t m = 0; m <= Mj; ++m) {
                if (F[m].is_zero()) continue;
                if (P == 0) {
                    add_at(L, m, F[m]);
                    continue;
                }
                mpz_class bin = 1;
                std::vector<mpz_class> Pp(m + 1);
                Pp[0] = 1;
                for (int64_t k = 1; k <= m; ++k) Pp[k] = R->reduce_scalar(Pp[k - 1] * P);
                for (int64_t k = 0; k <= m && k <= w.hi; ++k) {
                    if (k > 0) {
                        bin *= m - k + 1;
                        mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(),
                                        static_cast<unsigned long>(k));
                    }
                    add_at(L, k, F[m].scaled(bin * Pp[m - k]));
                }
            }
            return L;
        }
        // two distinct finite poles: (x - P_j)^{-m} = (v + D)^{-m}
        //   = sum_k binom(m+k-1, k) (-1)^k D^{-m-k} v^k
        mpz_class D = R->reduce_scalar(S.pole_lift[J1 - 1] - S.pole_lift[j - 1]);
        mpz_class Dinv = R->invert_unit(D);
        for (int64_t m = 0; m <= Mj; ++m) {
            if (F[m].is_zero()) continue;
            if (m == 0) {
                add_at(L, 0, F[m]);
                continue;
            }
            mpz_class bin = 1, Dk;
            mpz_powm_ui(Dk.get_mpz_t(), Dinv.get_mpz_t(), static_cast<unsigned long>(m),
                        R->modulus().get_mpz_t());
            for (int64_t k = 0; k <= w.hi; ++k) {
                if (k > 0) {
                    bin *= m + k - 1;
                    mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(),
                                    static_cast<unsigned long>(k));
                    Dk = R->reduce_scalar(Dk * Dinv);
                }
                mpz_class s = bin * Dk;
                if (k % 2 == 1) s = -s;
                add_at(L, k, F[m].scaled(s));
            }
        }
        return L;
    }

    // Expansion of a single power of X_J at pole J1.
    Laurent x_power(int64_t J) const {
        Laurent L = zero_series(R, w);
        if (J == J1) {
            add_at(L, J1 == 1 ? 1 : -1, R->one());
            return L;
        }
        if (J1 == 1) {
            // (x - P)^{-1} = sum_k P^k x^{-1-k}
            const mpz_class& P = S.pole_lift[J - 1];
            mpz_class Pk = 1;
            for (int64_t k = 0; -1 - k >= w.lo; ++k) {
                if (k > 0) Pk = R->reduce_scalar(Pk * P);
                add_at(L, -1 - k, R->from_scalar(Pk));
                if (P == 0) break;
            }
            return L;
        }
        if (J == 1) {
            // x = v + P
            add_at(L, 1, R->one());
            const mpz_class& P = S.pole_lift[J1 - 1];
            if (P != 0) add_at(L, 0, R->from_scalar(P));
            return L;
        }
        mpz_class D = R->reduce_scalar(S.pole_lift[J1 - 1] - S.pole_lift[J - 1]);
        mpz_class Dinv = R->invert_unit(D);
        mpz_class Dk = Dinv;
        for (int64_t k = 0; k <= w.hi; ++k) {
            if (k > 0) Dk = R->reduce_scalar(Dk * Dinv);
            mpz_class s = (k % 2 == 1) ? mpz_class(-Dk) : Dk;
            add_at(L, k, R->from_scalar(s));
        }
        return L;
    }
};

// ---- valuation bound bookkeeping ----

bool cond_C(int64_t s, int64_t t, int64_t p) {
    return s >= 0 && s % t == 0 && s / t <= p - 1;
}

void note(std::vector<BoundViolation>& out, const std::string& kind, int64_t J1,
          int64_t J, int64_t n, int64_t i, const std::string& detail) {
    out.push_back({kind, J1, J, n, i, detail});
}

// val == nullopt means "valuation >= N". Equality is asserted whenever
// the sufficient condition C(s,t) holds (certifiably, i.e. bound < N);
// with `converse` the divisibility half of the condition is also
// checked against observed equalities. (The s/t <= p-1 half has no
// converse: a unit series coefficient can produce equality beyond it.)
void check_bound(std::vector<BoundViolation>& out, const std::string& kind,
                 int64_t J1, int64_t J, int64_t n, int64_t i,
                 const std::optional<mpq_class>& val, const mpq_class& bound,
                 bool eq_cond, bool converse, int64_t s, int64_t t, int64_t N) {
    if (val && *val < bound) {
        note(out, kind, J1, J, n, i, "valuation below lower bound");
        return;
    }
    if (eq_cond && bound < N && (!val || *val != bound))
        note(out, kind, J1, J, n, i, "stated equality case fails");
    if (converse && (s < 0 || s % t != 0) && val && *val == bound)
        note(out, kind, J1, J, n, i, "equality observed outside stated condition");
}

mpq_class frac(int64_t num, int64_t den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class table1_bound(const std::vector<int64_t>& d, int64_t p, int64_t J1,
                       int64_t J, int64_t n, int64_t i) {
    const int64_t dJ1 = d[J1 - 1], dJ = d[J - 1];
    mpq_class b = (J1 <= 2) ? frac(n, dJ1) : frac(n - 1, dJ1);
    if (J1 == 1 && J != 1) b += frac(i, dJ1 * (p - 1)) + frac(i, dJ * (p - 1));
    if (J1 == 2 && J != 2) b += frac(i, dJ * (p - 1));
    if (J1 >= 3 && J != J1) b += frac(i, dJ * (p - 1));
    return b;
}

}  // namespace

// ---- public operations ----

DworkSetup dwork_setup(const RationalFunction& f0, int64_t precision) {
    if (f0.base()->degree() != 1)
        throw validation_error("p-adic pipeline requires a = 1 (base field F_p)");
    RationalFunction f = f0.normalize();
    DworkSetup S;
    const int64_t p = f.base()->p();
    S.ring = GammaRing::make(p, precision);
    S.d = f.orders();
    const int64_t Nw = S.ring->working_precision();
    for (const auto& blk : f.poles()) {
        if (blk.at_infinity())
            S.pole_lift.emplace_back(0);
        else
            S.pole_lift.push_back(
                teichmuller_lift(p, blk.location->coeffs()[0], Nw).residue());
        std::vector<mpz_class> cs;
        for (const auto& c : blk.coeffs)
            cs.push_back(teichmuller_lift(p, c.coeffs()[0], Nw).residue());
        S.coeff_lift.push_back(std::move(cs));
    }
    return S;
}

std::vector<GammaElement> splitting_coefficients(const DworkSetup& S, int64_t j,
                                                 int64_t n_max) {
    if (j < 1 || j > static_cast<int64_t>(S.d.size()) || n_max < 0)
        throw validation_error("bad splitting-coefficient request");
    const auto& R = S.ring;
    const int64_t p = R->p();
    auto e = artin_hasse_coefficients(p, n_max);
    std::vector<mpz_class> escal(n_max + 1);
    for (int64_t m = 0; m <= n_max; ++m)
        escal[m] = padic_from_rational(e[m], p, R->working_precision()).residue();

    std::vector<GammaElement> F(n_max + 1, R->zero());
    F[0] = R->one();
    for (int64_t i = 1; i <= S.d[j - 1]; ++i) {
        const mpz_class& a = S.coeff_lift[j - 1][i - 1];
        if (a == 0) continue;
        // E(gamma a Y^i) = sum_m e_m (gamma a)^m Y^{im}
        std::vector<GammaElement> fac(n_max + 1, R->zero());
        fac[0] = R->one();
        mpz_class apow = 1;
        for (int64_t m = 1; i * m <= n_max; ++m) {
            apow = R->reduce_scalar(apow * a);
            fac[i * m] = R->gamma_power(m).scaled(apow * escal[m]);
        }
        std::vector<GammaElement> next(n_max + 1, R->zero());
        for (int64_t s = 0; s <= n_max; ++s) {
            if (F[s].is_zero()) continue;
            for (int64_t t = 0; s + t <= n_max; t += i) {
                // fac is supported on multiples of i
                if (fac[t].is_zero()) continue;
                next[s + t] = next[s + t] + F[s] * fac[t];
            }
        }
        F = std::move(next);
    }
    return F;
}

std::vector<GammaElement> local_expansion(const DworkSetup& S, int64_t J1, int64_t J,
                                          int64_t i, int64_t n_max) {
    const int64_t ell = static_cast<int64_t>(S.d.size());
    if (J1 < 1 || J1 > ell || J < 1 || J > ell || i < 0 || n_max < 0)
        throw validation_error("bad local-expansion request");
    Expander E(S, J1, n_max, i);
    Laurent cur = E.G;
    if (i > 0) {
        Laurent xj = E.x_power(J);
        for (int64_t k = 0; k < i; ++k) cur = mul(cur, xj, E.w, S.ring);
    }
    std::vector<GammaElement> H;
    for (int64_t n = 0; n <= n_max; ++n)
        H.push_back(coeff(cur, J1 == 1 ? n : -n, S.ring));
    return H;
}

int64_t FrobeniusMatrix::position(int64_t J1, int64_t n) const {
    for (size_t k = 0; k < index.size(); ++k)
        if (index[k].first == J1 && index[k].second == n)
            return static_cast<int64_t>(k);
    return -1;
}

std::optional<mpq_class> FrobeniusMatrix::weighted_valuation(int64_t row,
                                                             int64_t col) const {
    auto v = B[row][col].valuation();
    if (!v) return std::nullopt;
    const auto& [J1, n] = index[row];
    const auto& [J, i] = index[col];
    const int64_t p = ring->p();
    mpq_class r = *v + frac(i, d[J - 1] * (p - 1)) - frac(n, d[J1 - 1] * (p - 1));
    r.canonicalize();
    return r;
}

FrobeniusMatrix frobenius_matrix(const RationalFunction& f0, int64_t precision) {
    RationalFunction f = f0.normalize();
    DworkSetup S = dwork_setup(f, precision);
    const int64_t ell = static_cast<int64_t>(S.d.size());
    const int64_t p = S.ring->p();
    const int64_t N = precision;

    FrobeniusMatrix M;
    M.ring = S.ring;
    M.d = S.d;
    for (int64_t j = 0; j < ell; ++j) M.block_T.push_back(S.d[j] * (N + 1) + 1);
    for (int64_t J1 = 1; J1 <= ell; ++J1)
        for (int64_t n = (J1 == 1 ? 0 : 1); n <= M.block_T[J1 - 1]; ++n)
            M.index.emplace_back(J1, n);
    const int64_t dim = M.dim();
    const int64_t maxT = *std::max_element(M.block_T.begin(), M.block_T.end());
    M.B.assign(dim, std::vector<GammaElement>(dim, S.ring->zero()));

    for (int64_t J1 = 1; J1 <= ell; ++J1) {
        const int64_t T1 = M.block_T[J1 - 1];
        Expander E(S, J1, p * T1, maxT);
        if (J1 == 1) {
            // splitting-coefficient bounds: ord F_{j,n} >= ceil(n/d_j)/(p-1),
            // with equality when d_j | n and n/d_j <= p-1
            for (int64_t j = 1; j <= ell; ++j)
                for (int64_t m = 1; m <= E.Mdeg[j - 1]; ++m) {
                    const int64_t dj = S.d[j - 1];
                    check_bound(M.violations, "splitting", j, j, m, 0,
                                E.Fs[j - 1][m].valuation(),
                                frac((m + dj - 1) / dj, p - 1),
                                cond_C(m, dj, p), false, m, dj, N);
                }
        }
        std::vector<std::vector<mpz_class>> Crow;  // C^{n, n..np} mod p^{N_work}
        std::vector<mpz_class> Ppow;               // pole-point powers
        if (J1 >= 3) {
            Crow.resize(T1 + 1);
            for (int64_t n = 1; n <= T1; ++n) {
                auto row = up_coefficient_row(p, n);
                for (const auto& q : row)
                    Crow[n].push_back(
                        padic_from_rational(q, p, S.ring->working_precision()).residue());
            }
            Ppow.resize(p * T1 + 1);
            Ppow[0] = 1;
            for (int64_t k = 1; k <= p * T1; ++k)
                Ppow[k] = S.ring->reduce_scalar(Ppow[k - 1] * S.pole_lift[J1 - 1]);
        }
        const int64_t n_lo = (J1 == 1) ? 0 : 1;
        for (int64_t J = 1; J <= ell; ++J) {
            Laurent cur = E.G;
            Laurent xj = E.x_power(J);
            for (int64_t i = (J == 1 ? 0 : 1); i <= M.block_T[J - 1]; ++i) {
                if (i > 0) cur = mul(cur, xj, E.w, S.ring);
                const int64_t col = M.position(J, i);
                auto H = [&](int64_t m) { return coeff(cur, J1 == 1 ? m : -m, S.ring); };
                if (J1 >= 3 && J == J1) {
                    // display-(13) bounds on every expansion coefficient
                    for (int64_t m = 1; m <= p * T1; ++m)
                        check_bound(M.violations, "local", J1, J, m, i, H(m).valuation(),
                                    frac(m - i, S.d[J1 - 1] * (p - 1)),
                                    cond_C(m - i, S.d[J1 - 1], p), true, m - i,
                                    S.d[J1 - 1], N);
                }
                for (int64_t n = n_lo; n <= T1; ++n) {
                    const int64_t row = M.position(J1, n);
                    GammaElement b = S.ring->zero();
                    if (J1 <= 2) {
                        b = H(n * p);
                    } else {
                        for (int64_t m = n; m <= n * p; ++m) {
                            GammaElement h = H(m);
                            if (h.is_zero()) continue;
                            b = b + h.scaled(Crow[n][m - n] * Ppow[n * p - m]);
                        }
                    }
                    M.B[row][col] = b;

                    const int64_t dJ1 = S.d[J1 - 1];
                    auto val = b.valuation();
                    int64_t s = 0;  // argument of the equality condition
                    bool cond = false, converse = false;
                    if (J1 <= 2) {
                        if (J1 == J)
                            s = n * p - i;
                        else
                            s = (J1 == 1) ? n * p + i : n * p;
                        cond = cond_C(s, dJ1, p);
                        converse = true;
                    } else {
                        s = (J == J1) ? (n - 1) * p - (i - 1) : (n - 1) * p + 1;
                        cond = dJ1 >= 2 && cond_C(s, dJ1, p);
                    }
                    const mpq_class ub = frac(s, dJ1 * (p - 1));
                    check_bound(M.violations, "unweighted", J1, J, n, i, val, ub, cond,
                                converse, s, dJ1, N);
                    check_bound(M.violations, "weighted", J1, J, n, i,
                                M.weighted_valuation(row, col),
                                table1_bound(S.d, p, J1, J, n, i), false, false, 0, 1,
                                N);
                }
            }
        }
    }
    return M;
}

std::vector<GammaElement> fredholm_char_series(const FrobeniusMatrix& M, int64_t t,
                                               int64_t skip) {
    if (t < 1) throw validation_error("characteristic series length must be positive");
    const auto& R = M.ring;
    std::vector<int64_t> keep;
    for (int64_t k = 0; k < M.dim(); ++k)
        if (k != skip) keep.push_back(k);
    const int64_t n = static_cast<int64_t>(keep.size());
    using Series = std::vector<GammaElement>;  // length t+1 in T

    auto smul = [&](const Series& a, const Series& b) {
        Series r(t + 1, R->zero());
        for (int64_t i = 0; i <= t; ++i) {
            if (a[i].is_zero()) continue;
            for (int64_t j = 0; i + j <= t; ++j) {
                if (b[j].is_zero()) continue;
                r[i + j] = r[i + j] + a[i] * b[j];
            }
        }
        return r;
    };
    auto ssub = [&](const Series& a, const Series& b) {
        Series r(t + 1, R->zero());
        for (int64_t i = 0; i <= t; ++i) r[i] = a[i] - b[i];
        return r;
    };
    auto sinv = [&](const Series& a) {
        if (a[0] != R->one())
            throw integrity_error("elimination pivot has non-unit constant term");
        Series q(t + 1, R->zero());
        q[0] = R->one();
        for (int64_t k = 1; k <= t; ++k) {
            GammaElement acc = R->zero();
            for (int64_t j = 1; j <= k; ++j) acc = acc + a[j] * q[k - j];
            q[k] = R->zero() - acc;
        }
        return q;
    };

    // A = 1 - T*M on the kept indices
    std::vector<std::vector<Series>> A(n, std::vector<Series>(n));
    for (int64_t r = 0; r < n; ++r)
        for (int64_t c = 0; c < n; ++c) {
            A[r][c].assign(t + 1, R->zero());
            if (r == c) A[r][c][0] = R->one();
            if (t >= 1) A[r][c][1] = R->zero() - M.B[keep[r]][keep[c]];
        }

    Series det(t + 1, R->zero());
    det[0] = R->one();
    for (int64_t k = 0; k < n; ++k) {
        const Series pivot = A[k][k];
        det = smul(det, pivot);
        const Series pinv = sinv(pivot);
        for (int64_t r = k + 1; r < n; ++r) {
            bool zero = true;
            for (int64_t j = 0; j <= t; ++j)
                if (!A[r][k][j].is_zero()) zero = false;
            if (zero) continue;
            const Series factor = smul(A[r][k], pinv);
            for (int64_t c = k; c < n; ++c) A[r][c] = ssub(A[r][c], smul(factor, A[k][c]));
        }
    }
    return Series(det.begin() + 1, det.end());
}

DworkResult dwork_newton_polygon(const RationalFunction& f0, DworkConfig cfg) {
    RationalFunction f = f0.normalize();
    if (f.base()->degree() != 1)
        throw validation_error("p-adic pipeline requires a = 1 (base field F_p)");
    const int64_t d = f.degree();
    const int64_t ell = f.pole_count();
    const int64_t t = d - ell + 1;
    int64_t N = cfg.precision > 0 ? cfg.precision : d + 4;

    DworkResult res;
    std::optional<Polygon> prev;
    int64_t prev_N = 0;
    for (int64_t round = 0; round <= cfg.max_rounds; ++round) {
        FrobeniusMatrix M = frobenius_matrix(f, N);
        const int64_t skip = (ell == 1) ? M.position(1, 0) : -1;
        auto C = fredholm_char_series(M, t, skip);
        res.precision_used = N;
        res.t_max_used = *std::max_element(M.block_T.begin(), M.block_T.end());
        res.violations = M.violations;

        std::vector<std::pair<int64_t, std::optional<mpq_class>>> pts;
        pts.emplace_back(0, mpq_class(0));
        for (int64_t k = 1; k <= t; ++k) pts.emplace_back(k, C[k - 1].valuation());
        if (!pts.back().second) {  // endpoint not resolved: raise precision
            prev.reset();
            N *= 2;
            continue;
        }
        Polygon P = lower_hull(pts);
        bool certified = prev && P == *prev;
        if (certified)
            for (const auto& v : P.vertices())
                if (v.y >= prev_N) certified = false;
        if (certified) {
            auto verts = P.vertices();
            if (ell > 1)
                verts.push_back({verts.back().x + (ell - 1), verts.back().y + (ell - 1)});
            res.np = Polygon(verts);
            return res;
        }
        prev = P;
        prev_N = N;
        N *= 2;
    }
    throw precision_error("Newton polygon failed to stabilize within the retry budget");
}

RowMinimaCheck hodge_bound_from_row_minima(const std::vector<int64_t>& orders) {
    const int64_t ell = static_cast<int64_t>(orders.size());
    if (ell < 1) throw validation_error("empty order tuple");
    const int64_t dsum = std::accumulate(orders.begin(), orders.end(), int64_t(0));
    const int64_t d = dsum + ell - 2;
    const int64_t need = d - ell + 1;
    if (need < 1) throw validation_error("trivial order tuple");

    RowMinimaCheck out;
    std::vector<mpq_class> vals;
    for (int64_t J1 = 1; J1 <= ell; ++J1) {
        const int64_t dj = orders[J1 - 1];
        int64_t n0;
        if (J1 == 1)
            n0 = (ell == 1) ? 1 : 0;  // the constant row carries no slope
        else
            n0 = 1;
        for (int64_t n = n0; n <= n0 + need; ++n)
            vals.push_back(J1 <= 2 ? frac(n, dj) : frac(n - 1, dj));
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(need);
    out.minima_prefix = vals;

    std::vector<mpq_class> hp;
    for (int64_t k = 0; k < ell - 1; ++k) hp.emplace_back(0);
    for (int64_t j = 0; j < ell; ++j)
        for (int64_t i = 1; i < orders[j]; ++i) hp.push_back(frac(i, orders[j]));
    std::sort(hp.begin(), hp.end());
    out.matches_hodge = (vals == hp);
    return out;
}

EqualityDiagnostics equality_criterion_diagnostics(const FrobeniusMatrix& M) {
    const int64_t ell = static_cast<int64_t>(M.d.size());
    const int64_t p = M.ring->p();
    int64_t l = 1;
    for (int64_t dj : M.d) l = std::lcm(l, dj);
    EqualityDiagnostics diag;
    diag.criterion = (p % l == 1 % l);

    // row ranges of M_{<1}
    auto row_range = [&](int64_t J1) -> std::pair<int64_t, int64_t> {
        if (J1 == 1) return {ell == 1 ? 1 : 0, M.d[0] - 1};
        if (J1 == 2) return {1, M.d[1] - 1};
        return {1, M.d[J1 - 1]};
    };

    if (diag.criterion) {
        // the minors that decide the slope < 1 part range over the same
        // index set in rows and columns, so the minimum is taken over the
        // selected columns only
        std::vector<int64_t> selected;
        for (int64_t J1 = 1; J1 <= ell; ++J1) {
            auto [a, b] = row_range(J1);
            for (int64_t n = a; n <= b; ++n) selected.push_back(M.position(J1, n));
        }
        bool all_ok = true;
        for (int64_t row : selected) {
            std::optional<mpq_class> best;
            std::vector<int64_t> argmin;
            for (int64_t col : selected) {
                auto v = M.weighted_valuation(row, col);
                if (!v) continue;
                if (!best || *v < *best) {
                    best = v;
                    argmin = {col};
                } else if (*v == *best) {
                    argmin.push_back(col);
                }
            }
            if (!best || argmin.size() != 1 || argmin[0] != row) all_ok = false;
        }
        diag.diagonal_minima_unique = all_ok;
    } else {
        for (int64_t J1 = 1; J1 <= ell; ++J1)
            if (p % M.d[J1 - 1] != 1 % M.d[J1 - 1]) diag.offending_blocks.push_back(J1);
        // in block 1 the minimal column satisfies i = np mod d_1
        auto [a, b] = row_range(1);
        for (int64_t n = std::max<int64_t>(a, 1); n <= b; ++n) {
            const int64_t i_n = (n * p) % M.d[0];
            if (i_n != n % M.d[0]) diag.witnesses.push_back({1, n, i_n});
        }
    }
    return diag;
}

}  // namespace exsum
