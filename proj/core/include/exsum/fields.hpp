#ifndef EXSUM_FIELDS_HPP
#define EXSUM_FIELDS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "exsum/errors.hpp"

namespace exsum {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An element of F_{p^n}, stored as a coefficient vector of length n
/// (constant term first, entries reduced mod p) over the defining
/// polynomial of its parent field.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr parent, std::vector<int64_t> coeffs);

    const FieldPtr& parent() const { return parent_; }
    const std::vector<int64_t>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    /// Lexicographic order on coefficient vectors, constant term first.
    bool operator<(const FieldElement& o) const { return coeffs_ < o.coeffs_; }

private:
    FieldPtr parent_;
    std::vector<int64_t> coeffs_;
};

/// F_{p^n} as one absolute extension of F_p with a deterministic model:
/// the defining polynomial is the lexicographically smallest monic
/// irreducible of degree n over F_p (coefficient-vector order, constant
/// term first).
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr make(int64_t p, int64_t n);

    int64_t p() const { return p_; }
    int64_t degree() const { return n_; }
    /// p^n; throws cap_error if it does not fit in 63 bits.
    int64_t order() const;
    /// Monic irreducible of degree n, constant term first, length n+1.
    const std::vector<int64_t>& defining_poly() const { return defining_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(int64_t v) const;
    /// Class of the variable t; equals from_int for n = 1.
    FieldElement generator() const;
    FieldElement element(std::vector<int64_t> coeffs) const;

    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement inv(const FieldElement& x) const;
    FieldElement div(const FieldElement& x, const FieldElement& y) const;
    FieldElement pow(const FieldElement& x, uint64_t e) const;
    FieldElement frobenius(const FieldElement& x) const;  // x -> x^p

    /// Absolute trace to F_p, as a residue in [0,p).
    int64_t absolute_trace(const FieldElement& x) const;

    /// Visits every element once, in lexicographic coefficient-vector
    /// order. Throws cap_error when p^n exceeds `cap`.
    void enumerate(const std::function<void(const FieldElement&)>& fn,
                   int64_t cap = kDefaultEnumerationCap) const;

    static constexpr int64_t kDefaultEnumerationCap = int64_t(1) << 26;

private:
    Field(int64_t p, int64_t n);
    void init();

    int64_t p_ = 0;
    int64_t n_ = 0;
    std::vector<int64_t> defining_;       // length n+1, monic
    std::vector<int64_t> trace_of_basis_; // Tr(t^m) for m < n
};

/// Ring homomorphism F_{p^a} -> F_{p^{a*k}} determined by mapping the
/// generator of the small field to the lexicographically smallest root
/// of its defining polynomial in the big field.
class Embedding {
public:
    Embedding(FieldPtr from, FieldPtr to);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }
    FieldElement operator()(const FieldElement& x) const;

private:
    FieldPtr from_;
    FieldPtr to_;
    std::vector<FieldElement> root_powers_;  // r^m for m < deg(from)
};

bool is_prime(int64_t n);

}  // namespace exsum

#endif
