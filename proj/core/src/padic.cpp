#include "exsum/padic.hpp"

namespace exsum {

mpz_class pow_int(int64_t p, int64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    return r;
}

int64_t ord_p_int(const mpz_class& v, int64_t p) {
    if (v == 0) throw validation_error("ord_p of zero");
    mpz_class w = abs(v);
    const mpz_class pz(p);
    int64_t k = 0;
    while (mpz_divisible_p(w.get_mpz_t(), pz.get_mpz_t())) {
        w /= pz;
        ++k;
    }
    return k;
}

int64_t ord_p_rat(const mpq_class& v, int64_t p) {
    if (v == 0) throw validation_error("ord_p of zero");
    return ord_p_int(v.get_num(), p) - ord_p_int(v.get_den(), p);
}

PadicInt::PadicInt(int64_t p, int64_t prec, const mpz_class& value)
    : p_(p), prec_(prec) {
    if (p < 2 || prec < 1) throw validation_error("bad p-adic parameters");
    mpz_class mod = pow_int(p, prec);
    mpz_mod(r_.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t());
}

void PadicInt::check_compatible(const PadicInt& o) const {
    if (p_ != o.p_) throw validation_error("p-adic prime mismatch");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
    check_compatible(o);
    return PadicInt(p_, std::min(prec_, o.prec_), r_ + o.r_);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
    check_compatible(o);
    return PadicInt(p_, std::min(prec_, o.prec_), r_ - o.r_);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
    check_compatible(o);
    return PadicInt(p_, std::min(prec_, o.prec_), r_ * o.r_);
}

PadicInt PadicInt::div_exact_p(int64_t k) const {
    if (k < 0 || k >= prec_) throw validation_error("bad p-power divisor");
    mpz_class pk = pow_int(p_, k);
    if (!mpz_divisible_p(r_.get_mpz_t(), pk.get_mpz_t()))
        throw integrity_error("inexact division by p^k");
    return PadicInt(p_, prec_ - k, r_ / pk);
}

std::optional<int64_t> PadicInt::valuation() const {
    if (r_ == 0) return std::nullopt;
    return ord_p_int(r_, p_);
}

PadicInt teichmuller_lift(int64_t p, int64_t abar, int64_t prec) {
    mpz_class mod = pow_int(p, prec);
    mpz_class x = ((abar % p) + p) % p;
    for (int64_t it = 0; it <= prec + 2; ++it) {
        mpz_class y;
        mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p),
                    mod.get_mpz_t());
        if (y == x) return PadicInt(p, prec, x);
        x = y;
    }
    throw integrity_error("Teichmuller iteration failed to stabilize");
}

PadicInt padic_from_rational(const mpq_class& v, int64_t p, int64_t prec) {
    mpz_class mod = pow_int(p, prec);
    mpz_class den_inv;
    if (!mpz_invert(den_inv.get_mpz_t(), v.get_den().get_mpz_t(), mod.get_mpz_t()))
        throw integrity_error("rational with p in denominator");
    return PadicInt(p, prec, v.get_num() * den_inv);
}

std::vector<mpq_class> artin_hasse_coefficients(int64_t p, int64_t n_max) {
    if (n_max < 0) throw validation_error("negative truncation degree");
    std::vector<mpq_class> e(n_max + 1);
    e[0] = 1;
    // d/dx log E(x) = sum_i x^{p^i - 1}, so n e_n = sum_{p^i <= n} e_{n - p^i}
    for (int64_t n = 1; n <= n_max; ++n) {
        mpq_class acc = 0;
        for (int64_t q = 1; q <= n; q *= p) acc += e[n - q];
        e[n] = acc / n;
        e[n].canonicalize();
        if (mpz_divisible_ui_p(e[n].get_den().get_mpz_t(),
                               static_cast<unsigned long>(p)))
            throw integrity_error("Artin-Hasse coefficient not p-integral");
    }
    return e;
}

namespace {

// W(k, s) = number of compositions (i_1..i_k), 1 <= i_j <= p, sum s,
// weighted by prod binom(p, i_j).
std::vector<mpz_class> composition_weights(int64_t p, int64_t n) {
    std::vector<mpz_class> binp(p + 1);
    for (int64_t i = 0; i <= p; ++i)
        mpz_bin_uiui(binp[i].get_mpz_t(), static_cast<unsigned long>(p),
                     static_cast<unsigned long>(i));
    std::vector<mpz_class> W(n * p + 1);
    W[0] = 1;
    for (int64_t k = 1; k <= n; ++k) {
        std::vector<mpz_class> next(n * p + 1);
        for (int64_t s = k; s <= k * p; ++s)
            for (int64_t i = 1; i <= p && i <= s; ++i)
                next[s] += binp[i] * W[s - i];
        W = std::move(next);
    }
    return W;
}

mpq_class checked_up_coefficient(int64_t p, int64_t n, int64_t m,
                                 const mpz_class& W_nm) {
    mpq_class C(m * W_nm, mpz_class(n) * p);
    C.canonicalize();
    if (C == 0) throw integrity_error("vanishing U_p coefficient");
    if (mpz_divisible_ui_p(C.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
        throw integrity_error("U_p coefficient not p-integral");
    const int64_t ord = ord_p_rat(C, p);
    // ord_p C^{n,m} >= (np - m)/(p - 1) - 1
    if (ord * (p - 1) < (n * p - m) - (p - 1))
        throw integrity_error("U_p coefficient below its valuation bound");
    const bool unit = (ord == 0);
    const bool expect_unit = (n == (m + p - 1) / p);
    if (unit != expect_unit)
        throw integrity_error("U_p coefficient unit status disagrees with n = ceil(m/p)");
    if (unit) {
        const int64_t eps = m - (n - 1) * p;
        mpz_class num_mod, den_inv, mod(p);
        mpz_invert(den_inv.get_mpz_t(), C.get_den().get_mpz_t(), mod.get_mpz_t());
        mpz_mod(num_mod.get_mpz_t(), mpz_class(C.get_num() * den_inv).get_mpz_t(),
                mod.get_mpz_t());
        int64_t want = (eps % 2 == 1) ? 1 : p - 1;  // (-1)^{eps-1} mod p
        if (num_mod != want % p)
            throw integrity_error("U_p unit coefficient has wrong residue mod p");
    }
    return C;
}

}  // namespace

mpq_class up_coefficient(int64_t p, int64_t n, int64_t m) {
    if (n < 1 || m < n || m > n * p)
        throw validation_error("U_p coefficient index out of range");
    auto W = composition_weights(p, n);
    return checked_up_coefficient(p, n, m, W[m]);
}

std::vector<mpq_class> up_coefficient_row(int64_t p, int64_t n) {
    if (n < 1) throw validation_error("U_p coefficient index out of range");
    auto W = composition_weights(p, n);
    std::vector<mpq_class> row;
    for (int64_t m = n; m <= n * p; ++m)
        row.push_back(checked_up_coefficient(p, n, m, W[m]));
    return row;
}

}  // namespace exsum
