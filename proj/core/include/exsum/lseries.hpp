#ifndef EXSUM_LSERIES_HPP
#define EXSUM_LSERIES_HPP

#include <vector>

#include "exsum/cyclotomic.hpp"
#include "exsum/polygon.hpp"
#include "exsum/rational_function.hpp"

namespace exsum {

/// N_c = #{x in F_{q^k} : g(x) != 0, Tr(f(x)) = c}; the exponential
/// sum S_k is sum_c N_c zeta^c.
struct CountVector {
    int64_t p = 0;
    std::vector<int64_t> counts;  // indexed by trace value c in [0,p)

    int64_t total() const;
};

struct LPolynomial {
    int64_t p = 0;
    /// b_0 = 1, b_1..b_d; size d+1
    std::vector<CyclotomicInteger> coeffs;

    int64_t degree() const { return static_cast<int64_t>(coeffs.size()) - 1; }
};

struct TheoremVerdict {
    bool lies_over = false;
    bool equals = false;
    bool criterion = false;  // p == 1 mod lcm(d_j)
};

/// Exact trace-class counts over F_{q^k}.
CountVector exp_sum_counts(const RationalFunction& f, int64_t k,
                           int64_t cap = Field::kDefaultEnumerationCap);

CyclotomicInteger counts_to_sum(const CountVector& N);

/// S_k as a cyclotomic integer.
CyclotomicInteger exp_sum(const RationalFunction& f, int64_t k,
                          int64_t cap = Field::kDefaultEnumerationCap);

/// L(f;T) = exp(sum_k S_k T^k / k) truncated at its exact degree d,
/// via the recurrence n b_n = sum_{k=1}^n S_k b_{n-k} with every
/// division checked exact. With `paranoid`, also computes S_{d+1},
/// S_{d+2} and asserts b_{d+1} = b_{d+2} = 0.
LPolynomial l_polynomial(const RationalFunction& f, bool paranoid = false,
                         int64_t cap = Field::kDefaultEnumerationCap);

/// Lower hull of (n, ord_p(b_n)/a); checks endpoint (d, d/2).
Polygon newton_polygon(const LPolynomial& L, int64_t a);

TheoremVerdict theorem_verdict(const RationalFunction& f, const Polygon& np);

}  // namespace exsum

#endif
