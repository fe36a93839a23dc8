#include "exsum/polygon.hpp"

#include <algorithm>
#include <numeric>

namespace exsum {

Polygon::Polygon(std::vector<PolygonPoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty() || vertices_[0].x != 0 || vertices_[0].y != 0)
        throw integrity_error("polygon must start at (0,0)");
    for (size_t i = 1; i + 1 < vertices_.size(); ++i) {
        // (v[i]-v[i-1]) slope < (v[i+1]-v[i]) slope
        mpq_class lhs = (vertices_[i].y - vertices_[i - 1].y) * (vertices_[i + 1].x - vertices_[i].x);
        mpq_class rhs = (vertices_[i + 1].y - vertices_[i].y) * (vertices_[i].x - vertices_[i - 1].x);
        if (lhs >= rhs) throw integrity_error("polygon vertices are not strictly convex");
    }
}

mpq_class Polygon::value_at(int64_t x) const {
    if (x < 0 || x > width()) throw integrity_error("polygon evaluation out of range");
    for (size_t i = 1; i < vertices_.size(); ++i) {
        if (x <= vertices_[i].x) {
            const auto& a = vertices_[i - 1];
            const auto& b = vertices_[i];
            mpq_class t(x - a.x, b.x - a.x);
            t.canonicalize();
            return a.y + t * (b.y - a.y);
        }
    }
    return vertices_.back().y;  // x == 0 with single vertex
}

bool Polygon::operator==(const Polygon& o) const {
    if (vertices_.size() != o.vertices_.size()) return false;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].x != o.vertices_[i].x || vertices_[i].y != o.vertices_[i].y)
            return false;
    return true;
}

std::vector<std::pair<mpq_class, int64_t>> Polygon::slope_segments() const {
    std::vector<std::pair<mpq_class, int64_t>> segs;
    for (size_t i = 1; i < vertices_.size(); ++i) {
        mpq_class slope = (vertices_[i].y - vertices_[i - 1].y) /
                          mpq_class(vertices_[i].x - vertices_[i - 1].x);
        slope.canonicalize();
        segs.emplace_back(slope, vertices_[i].x - vertices_[i - 1].x);
    }
    return segs;
}

Polygon Polygon::scaled(int64_t num, int64_t den) const {
    std::vector<PolygonPoint> v;
    for (const auto& pt : vertices_) {
        mpq_class x(pt.x * num, den);
        x.canonicalize();
        if (x.get_den() != 1) throw integrity_error("scaled polygon abscissa not integral");
        v.push_back({x.get_num().get_si(), pt.y * num / den});
    }
    return Polygon(std::move(v));
}

Polygon lower_hull(const std::vector<std::pair<int64_t, std::optional<mpq_class>>>& points) {
    std::vector<PolygonPoint> pts;
    bool has_origin = false;
    for (const auto& [x, y] : points) {
        if (!y) continue;
        if (x == 0) {
            if (*y != 0) throw integrity_error("hull origin must have y=0");
            has_origin = true;
        }
        pts.push_back({x, *y});
    }
    if (!has_origin) throw integrity_error("hull input missing origin");
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x == pts[i - 1].x) throw integrity_error("duplicate abscissa in hull input");

    // monotone chain, keeping only strict lower-hull vertices
    std::vector<PolygonPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b unless it turns strictly left: slope(a,b) < slope(b,pt)
            mpq_class lhs = (b.y - a.y) * (pt.x - b.x);
            mpq_class rhs = (pt.y - b.y) * (b.x - a.x);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    return Polygon(std::move(hull));
}

Polygon polygon_from_slopes(std::vector<mpq_class> slopes) {
    for (size_t i = 1; i < slopes.size(); ++i)
        if (slopes[i] < slopes[i - 1]) throw integrity_error("slopes must be nondecreasing");
    std::vector<PolygonPoint> v = {{0, 0}};
    mpq_class y = 0;
    for (size_t i = 0; i < slopes.size(); ++i) {
        y += slopes[i];
        if (i + 1 == slopes.size() || slopes[i + 1] != slopes[i])
            v.push_back({static_cast<int64_t>(i) + 1, y});
    }
    return Polygon(std::move(v));
}

Polygon hodge_polygon(const std::vector<int64_t>& orders) {
    const int64_t l = static_cast<int64_t>(orders.size());
    if (l < 1) throw validation_error("at least one pole order required");
    for (int64_t d : orders)
        if (d < 1) throw validation_error("pole orders must be >= 1");
    if (l == 1 && orders[0] == 1)
        throw validation_error("trivial case d_1 = l = 1 has L = 1");
    std::vector<mpq_class> slopes;
    for (int64_t i = 0; i < l - 1; ++i) slopes.emplace_back(0);
    for (int64_t i = 0; i < l - 1; ++i) slopes.emplace_back(1);
    for (int64_t dj : orders)
        for (int64_t i = 1; i < dj; ++i) {
            mpq_class s(i, dj);
            s.canonicalize();
            slopes.push_back(s);
        }
    std::sort(slopes.begin(), slopes.end());
    return polygon_from_slopes(std::move(slopes));
}

bool lies_over(const Polygon& P, const Polygon& Q) {
    if (P.width() != Q.width()) throw validation_error("polygon endpoint mismatch");
    auto check_at = [&](int64_t x) { return P.value_at(x) >= Q.value_at(x); };
    for (const auto& v : P.vertices())
        if (!check_at(v.x)) return false;
    for (const auto& v : Q.vertices())
        if (!check_at(v.x)) return false;
    return true;
}

}  // namespace exsum
