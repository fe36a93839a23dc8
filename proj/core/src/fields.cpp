#include "exsum/fields.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace exsum {
namespace {

int64_t mod_p(int64_t v, int64_t p) {
    int64_t r = v % p;
    return r < 0 ? r + p : r;
}

int64_t inv_mod_p(int64_t v, int64_t p) {
    // Fermat; p is prime and v != 0 mod p.
    int64_t r = 1, b = mod_p(v, p), e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

using Poly = std::vector<int64_t>;  // constant term first

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim(c);
    return c;
}

// a mod f; f need not be monic
Poly poly_rem(Poly a, const Poly& f, int64_t p) {
    trim(a);
    const size_t n = f.size() - 1;
    const int64_t lead_inv = inv_mod_p(f.back(), p);
    while (a.size() > n) {
        int64_t coef = a.back() * lead_inv % p;
        size_t shift = a.size() - 1 - n;
        if (coef != 0) {
            for (size_t i = 0; i < n; ++i)
                a[shift + i] = mod_p(a[shift + i] - coef * f[i], p);
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    return poly_rem(poly_mul(a, b, p), f, p);
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, int64_t p) {
    Poly r = {1};
    base = poly_rem(std::move(base), f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        int64_t s = inv_mod_p(a.back(), p);
        for (auto& c : a) c = c * s % p;
    }
    return a;
}

// x^{p^i} mod f via repeated p-th powering of x.
bool is_irreducible(const Poly& f, int64_t p) {
    const size_t n = f.size() - 1;
    if (n == 0) return false;
    Poly x = {0, 1};
    Poly xp = poly_rem(x, f, p);
    for (size_t i = 1; i <= n / 2; ++i) {
        xp = poly_powmod(xp, static_cast<uint64_t>(p), f, p);
        // gcd(x^{p^i} - x, f) must be 1
        Poly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = mod_p(diff[1] - 1, p);
        trim(diff);
        Poly g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    // f must also have no factor of degree > n/2 paired with nothing:
    // for monic f of degree n, x^{p^n} = x mod f iff all factors have
    // degree dividing n; combined with the gcd checks above this pins
    // irreducibility.
    Poly xq = x;
    for (size_t i = 0; i < n; ++i)
        xq = poly_powmod(xq, static_cast<uint64_t>(p), f, p);
    Poly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_p(diff[1] - 1, p);
    trim(diff);
    return diff.empty();
}

}  // namespace

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldElement::FieldElement(FieldPtr parent, std::vector<int64_t> coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
    assert(parent_ && static_cast<int64_t>(coeffs_.size()) == parent_->degree());
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int64_t c) { return c == 0; });
}

bool FieldElement::operator==(const FieldElement& o) const {
    return coeffs_ == o.coeffs_;
}

Field::Field(int64_t p, int64_t n) : p_(p), n_(n) {}

FieldPtr Field::make(int64_t p, int64_t n) {
    if (!is_prime(p)) throw validation_error("field characteristic is not prime");
    if (n < 1) throw validation_error("extension degree must be positive");
    // one shared instance per (p, n), so parent checks can be identity
    static std::mutex mu;
    static std::map<std::pair<int64_t, int64_t>, std::weak_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, n}];
    if (auto existing = slot.lock()) return existing;
    auto f = FieldPtr(new Field(p, n));
    const_cast<Field*>(f.get())->init();
    slot = f;
    return f;
}

void Field::init() {
    // Lexicographically smallest monic irreducible, constant term first.
    if (n_ == 1) {
        defining_ = {0, 1};  // x
    } else {
        Poly f(n_ + 1, 0);
        f[n_] = 1;
        for (;;) {
            if (is_irreducible(f, p_)) break;
            // odometer on (f[0], ..., f[n-1]) in lex order: last index
            // is the least significant
            int64_t i = n_ - 1;
            while (i >= 0 && f[i] == p_ - 1) f[i--] = 0;
            if (i < 0) throw integrity_error("no irreducible polynomial found");
            ++f[i];
        }
        defining_ = f;
    }

    // Tr(t^m) = matrix trace of multiplication by t^m.
    std::vector<Poly> tpow(2 * n_ - 1);
    tpow[0] = {1};
    for (int64_t k = 1; k < 2 * n_ - 1; ++k) {
        Poly t = {0, 1};
        tpow[k] = poly_mulmod(tpow[k - 1], t, defining_, p_);
    }
    trace_of_basis_.assign(n_, 0);
    for (int64_t m = 0; m < n_; ++m) {
        int64_t tr = 0;
        for (int64_t j = 0; j < n_; ++j) {
            const Poly& prod = tpow[m + j];
            if (static_cast<int64_t>(prod.size()) > j) tr = (tr + prod[j]) % p_;
        }
        trace_of_basis_[m] = tr;
    }
}

int64_t Field::order() const {
    int64_t q = 1;
    for (int64_t i = 0; i < n_; ++i) {
        if (q > (int64_t(1) << 62) / p_) throw cap_error("field order exceeds 63 bits");
        q *= p_;
    }
    return q;
}

FieldElement Field::zero() const {
    return FieldElement(shared_from_this(), std::vector<int64_t>(n_, 0));
}

FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(int64_t v) const {
    std::vector<int64_t> c(n_, 0);
    c[0] = mod_p(v, p_);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::generator() const {
    if (n_ == 1) return one();
    std::vector<int64_t> c(n_, 0);
    c[1] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::element(std::vector<int64_t> coeffs) const {
    if (static_cast<int64_t>(coeffs.size()) != n_)
        throw validation_error("coefficient vector length mismatch");
    for (auto& c : coeffs) c = mod_p(c, p_);
    return FieldElement(shared_from_this(), std::move(coeffs));
}

namespace {
void check_parent(const Field* self, const FieldElement& x, const FieldElement& y) {
    if (x.parent().get() != self || y.parent().get() != self)
        throw validation_error("field element parent mismatch");
}
}  // namespace

FieldElement Field::add(const FieldElement& x, const FieldElement& y) const {
    check_parent(this, x, y);
    std::vector<int64_t> c(n_);
    for (int64_t i = 0; i < n_; ++i) c[i] = (x.coeffs()[i] + y.coeffs()[i]) % p_;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::sub(const FieldElement& x, const FieldElement& y) const {
    check_parent(this, x, y);
    std::vector<int64_t> c(n_);
    for (int64_t i = 0; i < n_; ++i) c[i] = mod_p(x.coeffs()[i] - y.coeffs()[i], p_);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::neg(const FieldElement& x) const { return sub(zero(), x); }

FieldElement Field::mul(const FieldElement& x, const FieldElement& y) const {
    check_parent(this, x, y);
    Poly c = poly_mulmod(x.coeffs(), y.coeffs(), defining_, p_);
    c.resize(n_, 0);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::inv(const FieldElement& x) const {
    if (x.is_zero()) throw validation_error("division by zero field element");
    // extended Euclid in F_p[t]
    Poly r0 = defining_, r1 = x.coeffs();
    trim(r1);
    Poly s0 = {}, s1 = {1};
    while (!r1.empty() && r1.size() > 1) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        trim(rem);
        int64_t lead_inv = inv_mod_p(r1.back(), p_);
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            int64_t coef = rem.back() * lead_inv % p_;
            size_t shift = rem.size() - r1.size();
            q[shift] = coef;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = mod_p(rem[shift + i] - coef * r1[i], p_);
            trim(rem);
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        Poly qs = poly_mul(q, s1, p_);
        Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = mod_p(s2[i] - qs[i], p_);
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw integrity_error("inverse of non-unit");
    int64_t s = inv_mod_p(r1[0], p_);
    for (auto& c : s1) c = c * s % p_;
    s1.resize(n_, 0);
    return FieldElement(shared_from_this(), std::move(s1));
}

FieldElement Field::div(const FieldElement& x, const FieldElement& y) const {
    return mul(x, inv(y));
}

FieldElement Field::pow(const FieldElement& x, uint64_t e) const {
    FieldElement r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FieldElement Field::frobenius(const FieldElement& x) const {
    return pow(x, static_cast<uint64_t>(p_));
}

int64_t Field::absolute_trace(const FieldElement& x) const {
    if (x.parent().get() != this) throw validation_error("field element parent mismatch");
    int64_t tr = 0;
    for (int64_t m = 0; m < n_; ++m)
        tr = (tr + x.coeffs()[m] * trace_of_basis_[m]) % p_;
    return tr;
}

void Field::enumerate(const std::function<void(const FieldElement&)>& fn, int64_t cap) const {
    int64_t q = order();
    if (q > cap) throw cap_error("enumeration of " + std::to_string(q) +
                                 " elements exceeds cap " + std::to_string(cap));
    std::vector<int64_t> c(n_, 0);
    auto self = shared_from_this();
    for (;;) {
        fn(FieldElement(self, c));
        int64_t i = n_ - 1;  // last coefficient least significant: lex order
        while (i >= 0 && c[i] == p_ - 1) c[i--] = 0;
        if (i < 0) return;
        ++c[i];
    }
}

Embedding::Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_->p() != to_->p()) throw validation_error("incompatible characteristics");
    if (to_->degree() % from_->degree() != 0)
        throw validation_error("no embedding: degree does not divide");
    const int64_t a = from_->degree();
    FieldElement root = to_->zero();
    if (a == 1) {
        root = to_->zero();  // defining poly is x; unused beyond r^0
    } else {
        // lexicographically smallest root of the small field's defining
        // polynomial, found by scanning elements in lex order
        const auto& g = from_->defining_poly();
        bool found = false;
        to_->enumerate([&](const FieldElement& cand) {
            if (found) return;
            FieldElement acc = to_->zero();
            for (int64_t i = a; i >= 0; --i) {
                acc = to_->mul(acc, cand);
                acc = to_->add(acc, to_->from_int(g[i]));
            }
            if (acc.is_zero()) {
                root = cand;
                found = true;
            }
        });
        if (!found) throw integrity_error("defining polynomial has no root in extension");
    }
    root_powers_.clear();
    FieldElement pw = to_->one();
    for (int64_t m = 0; m < a; ++m) {
        root_powers_.push_back(pw);
        pw = to_->mul(pw, root);
    }
}

FieldElement Embedding::operator()(const FieldElement& x) const {
    if (x.parent().get() != from_.get())
        throw validation_error("embedding applied to foreign element");
    FieldElement acc = to_->zero();
    for (size_t m = 0; m < root_powers_.size(); ++m) {
        if (x.coeffs()[m] == 0) continue;
        FieldElement term = to_->mul(root_powers_[m], to_->from_int(x.coeffs()[m]));
        acc = to_->add(acc, term);
    }
    return acc;
}

}  // namespace exsum
