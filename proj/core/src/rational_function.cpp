#include "exsum/rational_function.hpp"

#include <algorithm>
#include <numeric>

namespace exsum {
namespace {

int64_t binom_mod_p(int64_t n, int64_t k, int64_t p) {
    if (k < 0 || k > n) return 0;
    // n stays at desk scale (pole orders), so the product fits
    int64_t num = 1, den = 1;
    for (int64_t i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return (num / den) % p;
}

}  // namespace

RationalFunction RationalFunction::validate(FieldPtr base, std::vector<PoleBlock> poles) {
    if (!base) throw validation_error("base field required");
    if (poles.empty()) throw validation_error("at least one pole required");

    bool has_inf = false;
    for (const auto& blk : poles) {
        if (blk.coeffs.empty()) throw validation_error("pole with order 0");
        for (const auto& c : blk.coeffs)
            if (c.parent() != base) throw validation_error("coefficient not in base field");
        if (blk.coeffs.back().is_zero())
            throw validation_error("leading coefficient a_{j,d_j} is zero");
        if (blk.order() % base->p() == 0)
            throw validation_error("p divides pole order d_j");
        if (blk.at_infinity()) {
            if (has_inf) throw validation_error("duplicate pole at infinity");
            has_inf = true;
        } else if (blk.location->parent() != base) {
            throw validation_error("pole location not in base field");
        }
    }
    if (!has_inf) throw validation_error("pole at infinity required (P_1 = infinity)");
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (!poles[i].at_infinity() && !poles[j].at_infinity() &&
                *poles[i].location == *poles[j].location)
                throw validation_error("duplicate finite pole");
    if (poles.size() == 1 && poles[0].order() == 1)
        throw validation_error("trivial case d_1 = l = 1: L = 1");

    // infinity first, finite poles in lexicographic element order
    std::stable_sort(poles.begin(), poles.end(), [](const PoleBlock& a, const PoleBlock& b) {
        if (a.at_infinity() != b.at_infinity()) return a.at_infinity();
        if (a.at_infinity()) return false;
        return *a.location < *b.location;
    });

    RationalFunction f;
    f.base_ = std::move(base);
    f.poles_ = std::move(poles);
    return f;
}

std::vector<int64_t> RationalFunction::orders() const {
    std::vector<int64_t> d;
    for (const auto& blk : poles_) d.push_back(blk.order());
    return d;
}

int64_t RationalFunction::degree() const {
    int64_t sum = 0;
    for (const auto& blk : poles_) sum += blk.order();
    return sum + pole_count() - 2;
}

int64_t RationalFunction::lcm_orders() const {
    int64_t l = 1;
    for (const auto& blk : poles_) l = std::lcm(l, blk.order());
    return l;
}

RationalFunction RationalFunction::shift(const FieldElement& c) const {
    if (c.parent() != base_) throw validation_error("shift constant not in base field");
    std::vector<PoleBlock> out;
    for (const auto& blk : poles_) {
        if (blk.at_infinity()) {
            // sum_i a_i (x+c)^i = sum_m x^m sum_{i>=m} a_i C(i,m) c^{i-m};
            // the m=0 term is dropped
            const int64_t d = blk.order();
            std::vector<FieldElement> b(d, base_->zero());
            for (int64_t m = 1; m <= d; ++m) {
                FieldElement acc = base_->zero();
                FieldElement cpow = base_->one();
                for (int64_t i = m; i <= d; ++i) {
                    FieldElement term = base_->mul(blk.coeffs[i - 1], cpow);
                    term = base_->mul(term, base_->from_int(binom_mod_p(i, m, base_->p())));
                    acc = base_->add(acc, term);
                    cpow = base_->mul(cpow, c);
                }
                b[m - 1] = acc;
            }
            out.push_back({std::nullopt, std::move(b)});
        } else {
            out.push_back({base_->sub(*blk.location, c), blk.coeffs});
        }
    }
    return validate(base_, std::move(out));
}

RationalFunction RationalFunction::normalize() const {
    if (pole_count() == 1) return *this;
    for (const auto& blk : poles_)
        if (!blk.at_infinity() && blk.location->is_zero()) return *this;
    // poles_ is sorted, so poles_[1] is the lexicographically first
    // finite pole
    FieldElement c = *poles_[1].location;
    RationalFunction shifted = shift(c);
    shifted.shift_ = c;
    return shifted;
}

FieldElement RationalFunction::evaluate(const Embedding& embed, const FieldElement& x) const {
    if (embed.from() != base_) throw validation_error("embedding base mismatch");
    const auto& K = embed.to();
    FieldElement acc = K->zero();
    for (const auto& blk : poles_) {
        if (blk.at_infinity()) {
            // Horner on a_d x^{d} + ... + a_1 x
            FieldElement h = K->zero();
            for (int64_t i = blk.order(); i >= 1; --i) {
                h = K->mul(h, x);
                h = K->add(h, embed(blk.coeffs[i - 1]));
            }
            acc = K->add(acc, K->mul(h, x));
        } else {
            FieldElement y = K->sub(x, embed(*blk.location));
            if (y.is_zero()) throw validation_error("evaluation at a pole");
            FieldElement yinv = K->inv(y);
            FieldElement h = K->zero();
            for (int64_t i = blk.order(); i >= 1; --i) {
                h = K->mul(h, yinv);
                h = K->add(h, embed(blk.coeffs[i - 1]));
            }
            acc = K->add(acc, K->mul(h, yinv));
        }
    }
    return acc;
}

}  // namespace exsum
