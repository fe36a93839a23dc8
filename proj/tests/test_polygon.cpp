#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "exsum/polygon.hpp"

using namespace exsum;

namespace {

Polygon hull_of(std::vector<std::pair<int64_t, std::optional<mpq_class>>> pts) {
    return lower_hull(pts);
}

mpq_class q(int64_t n, int64_t d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("hull drops points above a chord") {
    Polygon P = hull_of({{0, q(0)}, {1, q(1)}, {2, q(1)}});
    REQUIRE(P.vertices().size() == 2);
    CHECK(P.vertices()[0].x == 0);
    CHECK(P.vertices()[1].x == 2);
    CHECK(P.vertices()[1].y == 1);
}

TEST_CASE("hull keeps a genuine vertex") {
    Polygon P = hull_of({{0, q(0)}, {1, q(1, 2)}});
    REQUIRE(P.vertices().size() == 2);
    CHECK(P.vertices()[1].y == q(1, 2));
}

TEST_CASE("hull skips infinite ordinates") {
    Polygon P = hull_of({{0, q(0)}, {1, std::nullopt}, {2, q(1)}});
    REQUIRE(P.vertices().size() == 2);
    CHECK(P.vertices()[1].x == 2);
}

TEST_CASE("hull input validation") {
    CHECK_THROWS_AS(hull_of({{1, q(1)}, {2, q(2)}}), integrity_error);  // no origin
    CHECK_THROWS_AS(hull_of({{0, q(1)}, {2, q(2)}}), integrity_error);  // origin off axis
    CHECK_THROWS_AS(hull_of({{0, q(0)}, {1, q(1)}, {1, q(2)}}),
                    integrity_error);  // duplicate abscissa
    // infinite ordinates are skipped, even at the right edge
    CHECK(hull_of({{0, q(0)}, {2, std::nullopt}}).width() == 0);
}

TEST_CASE("every input point lies on or above the hull") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int64_t> num(-6, 12), den(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<int64_t, std::optional<mpq_class>>> pts{{0, q(0)}};
        int64_t width = 2 + trial % 7;
        for (int64_t x = 1; x <= width; ++x) pts.push_back({x, q(num(rng), den(rng))});
        Polygon P = lower_hull(pts);
        for (const auto& [x, y] : pts) CHECK(*y >= P.value_at(x));
        // slopes strictly increase between consecutive vertices
        const auto& v = P.vertices();
        for (size_t i = 2; i < v.size(); ++i) {
            mpq_class s1 = (v[i - 1].y - v[i - 2].y) / (v[i - 1].x - v[i - 2].x);
            mpq_class s2 = (v[i].y - v[i - 1].y) / (v[i].x - v[i - 1].x);
            CHECK(s1 < s2);
        }
        CHECK(lies_over(P, P));
    }
}

TEST_CASE("hodge polygon: single pole of order 2") {
    Polygon H = hodge_polygon({2});
    REQUIRE(H.vertices().size() == 2);
    CHECK(H.vertices()[1].x == 1);
    CHECK(H.vertices()[1].y == q(1, 2));
}

TEST_CASE("hodge polygon: single pole of order 3") {
    Polygon H = hodge_polygon({3});
    CHECK(H.width() == 2);
    CHECK(H.vertices().back().y == 1);
    auto segs = H.slope_segments();
    REQUIRE(segs.size() == 2);
    CHECK(segs[0] == std::make_pair(q(1, 3), int64_t(1)));
    CHECK(segs[1] == std::make_pair(q(2, 3), int64_t(1)));
}

TEST_CASE("hodge polygon: two poles of order 2") {
    Polygon H = hodge_polygon({2, 2});
    CHECK(H.width() == 4);
    CHECK(H.vertices().back().y == 2);
    auto segs = H.slope_segments();
    REQUIRE(segs.size() == 3);
    CHECK(segs[0] == std::make_pair(q(0), int64_t(1)));
    CHECK(segs[1] == std::make_pair(q(1, 2), int64_t(2)));
    CHECK(segs[2] == std::make_pair(q(1), int64_t(1)));
}

TEST_CASE("hodge polygon endpoints and multiplicity") {
    for (auto orders : std::vector<std::vector<int64_t>>{
             {2}, {3}, {4}, {5}, {2, 2}, {3, 1}, {4, 2, 1}, {5, 3, 2}}) {
        Polygon H = hodge_polygon(orders);
        int64_t d = -2 + static_cast<int64_t>(orders.size());
        for (int64_t dj : orders) d += dj;
        CHECK(H.vertices().front().x == 0);
        CHECK(H.vertices().front().y == 0);
        CHECK(H.width() == d);
        CHECK(H.vertices().back().y == q(d, 2));
        int64_t total = 0;
        for (const auto& [s, len] : H.slope_segments()) total += len;
        CHECK(total == d);
    }
}

TEST_CASE("hodge polygon rejects the trivial case") {
    CHECK_THROWS_AS(hodge_polygon({1}), validation_error);
    CHECK_THROWS_AS(hodge_polygon({}), validation_error);
}

TEST_CASE("lies_over comparisons") {
    // P dips below the chord of Q at x = 1, so Q lies over P
    Polygon P(std::vector<PolygonPoint>{{0, q(0)}, {1, q(1, 2)}, {2, q(2)}});
    Polygon Q(std::vector<PolygonPoint>{{0, q(0)}, {2, q(2)}});
    CHECK(lies_over(Q, P));
    CHECK_FALSE(lies_over(P, Q));
    CHECK(lies_over(P, P));
    Polygon R(std::vector<PolygonPoint>{{0, q(0)}, {3, q(3)}});
    CHECK_THROWS_AS(lies_over(P, R), validation_error);  // endpoint mismatch
}

TEST_CASE("slope segments of a single segment") {
    Polygon P(std::vector<PolygonPoint>{{0, q(0)}, {2, q(1)}});
    auto segs = P.slope_segments();
    REQUIRE(segs.size() == 1);
    CHECK(segs[0] == std::make_pair(q(1, 2), int64_t(2)));
}

TEST_CASE("polygon from slopes round-trips") {
    std::vector<mpq_class> slopes{q(0), q(1, 3), q(1, 3), q(1)};
    Polygon P = polygon_from_slopes(slopes);
    std::vector<mpq_class> back;
    for (const auto& [s, len] : P.slope_segments())
        for (int64_t i = 0; i < len; ++i) back.push_back(s);
    CHECK(back == slopes);
}

TEST_CASE("scaling both axes") {
    Polygon P(std::vector<PolygonPoint>{{0, q(0)}, {1, q(1, 2)}, {3, q(2)}});
    Polygon S = P.scaled(2, 1);
    REQUIRE(S.vertices().size() == 3);
    CHECK(S.vertices()[1].x == 2);
    CHECK(S.vertices()[1].y == 1);
    CHECK(S.vertices()[2].x == 6);
    CHECK(S.vertices()[2].y == 4);
}

TEST_CASE("value_at interpolates linearly") {
    Polygon P(std::vector<PolygonPoint>{{0, q(0)}, {4, q(2)}});
    CHECK(P.value_at(1) == q(1, 2));
    CHECK(P.value_at(3) == q(3, 2));
}
