#ifndef EXSUM_POLYGON_HPP
#define EXSUM_POLYGON_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "exsum/errors.hpp"

namespace exsum {

struct PolygonPoint {
    int64_t x;
    mpq_class y;
};

/// Lower convex hull with exact rational vertices, starting at (0,0).
/// Consecutive slopes strictly increase, so the vertex list is minimal.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<PolygonPoint> vertices);

    const std::vector<PolygonPoint>& vertices() const { return vertices_; }
    int64_t width() const { return vertices_.back().x; }
    /// Value of the piecewise-linear function at integer x.
    mpq_class value_at(int64_t x) const;

    bool operator==(const Polygon& o) const;
    bool operator!=(const Polygon& o) const { return !(*this == o); }

    /// Run-length encoding of the slope multiset.
    std::vector<std::pair<mpq_class, int64_t>> slope_segments() const;

    /// Both axes multiplied by `num/den` (exact; x must stay integral).
    Polygon scaled(int64_t num, int64_t den) const;

private:
    std::vector<PolygonPoint> vertices_;
};

/// Lower hull of points (x, y); y = nullopt encodes an infinite
/// ordinate (the point is skipped). Points must include x=0 with y=0
/// and the largest x must have finite y.
Polygon lower_hull(const std::vector<std::pair<int64_t, std::optional<mpq_class>>>& points);

/// Hodge polygon of the pole-order tuple (d_1..d_l): slope multiset
/// {0 x (l-1)} u {1 x (l-1)} u U_j {i/d_j : 1 <= i <= d_j-1}.
Polygon hodge_polygon(const std::vector<int64_t>& orders);

/// True iff P(x) >= Q(x) for all x; requires equal endpoints in x.
bool lies_over(const Polygon& P, const Polygon& Q);

/// Polygon with the given nondecreasing slope multiset, from (0,0).
Polygon polygon_from_slopes(std::vector<mpq_class> slopes);

}  // namespace exsum

#endif
