#ifndef EXSUM_RATIONAL_FUNCTION_HPP
#define EXSUM_RATIONAL_FUNCTION_HPP

#include <optional>
#include <vector>

#include "exsum/fields.hpp"

namespace exsum {

/// One pole block: location (nullopt = infinity), order d >= 1 and the
/// coefficients a_1..a_d of (x - P)^{-1} .. (x - P)^{-d}; for the pole
/// at infinity these are the coefficients of x^1 .. x^d.
struct PoleBlock {
    std::optional<FieldElement> location;  // nullopt: infinity
    std::vector<FieldElement> coeffs;      // coeffs[i-1] is a_i; size = order

    bool at_infinity() const { return !location.has_value(); }
    int64_t order() const { return static_cast<int64_t>(coeffs.size()); }
};

/// Partial-fraction rational function over F_q: sum over poles of
/// sum_i a_{j,i} (x - P_j)^{-i}, with (x - inf)^{-i} read as x^i.
/// The pole at infinity is required and listed first.
class RationalFunction {
public:
    /// Validates and normalizes pole ordering (infinity first, finite
    /// poles in lexicographic element order).
    static RationalFunction validate(FieldPtr base, std::vector<PoleBlock> poles);

    const FieldPtr& base() const { return base_; }
    const std::vector<PoleBlock>& poles() const { return poles_; }
    int64_t pole_count() const { return static_cast<int64_t>(poles_.size()); }

    std::vector<int64_t> orders() const;
    /// d = sum d_j + l - 2
    int64_t degree() const;
    int64_t lcm_orders() const;

    /// f(x + c); the constant term produced by expanding the infinity
    /// block is dropped (it leaves L unchanged).
    RationalFunction shift(const FieldElement& c) const;

    /// If l > 1 and no pole lies at 0, shifts the first finite pole to
    /// 0 and records the shift used.
    RationalFunction normalize() const;
    const std::optional<FieldElement>& recorded_shift() const { return shift_; }

    /// Evaluation over the extension reached by `embed` (from = base).
    /// Throws validation_error at a pole.
    FieldElement evaluate(const Embedding& embed, const FieldElement& x) const;

private:
    FieldPtr base_;
    std::vector<PoleBlock> poles_;
    std::optional<FieldElement> shift_;
};

}  // namespace exsum

#endif
