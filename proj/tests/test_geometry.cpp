#include <doctest.h>

#include <cmath>
#include <limits>

#include "loopgas/geometry.hpp"
#include "loopgas/sampling.hpp"

using namespace loopgas;

namespace {
ClassicalConfig cc(std::initializer_list<Vec> pts) {
    ClassicalConfig c;
    for (const Vec& p : pts) c.points.push_back(p);
    return c;
}
}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("min_pair_distance basic values") {
    CHECK(min_pair_distance(cc({})) == std::numeric_limits<double>::infinity());
    CHECK(min_pair_distance(cc({{0.0, 0.0}})) ==
          std::numeric_limits<double>::infinity());
    CHECK(min_pair_distance(cc({{0.0, 0.0}, {3.0, 4.0}})) == doctest::Approx(5.0));
    // brute force over the 3 pairs: 1, 1, sqrt(2)
    CHECK(min_pair_distance(cc({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(1.0));
}

TEST_CASE("hardcore_admissible is inclusive at the core distance") {
    CHECK(hardcore_admissible(cc({}), 1.0));
    CHECK_FALSE(hardcore_admissible(cc({{0.0, 0.0}, {0.5, 0.0}}), 1.0));
    CHECK(hardcore_admissible(cc({{0.0, 0.0}, {1.0, 0.0}}), 1.0));
}

TEST_CASE("max_occupancy evaluates the packing cap") {
    CHECK(max_occupancy(BoxRegion::cube({0.0, 0.0}, 1.0), 0.5) == 16);
    CHECK(max_occupancy(BoxRegion::cube({0.0}, 0.5), 1.0) == 1);
    CHECK(max_occupancy(BoxRegion::cube({0.0, 0.0}, 1.0), 1.5) == 2);
}

TEST_CASE("max_occupancy monotonicity") {
    const BoxRegion small = BoxRegion::cube({0.0, 0.0}, 0.7);
    const BoxRegion big = BoxRegion::cube({0.0, 0.0}, 1.9);
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {0.2, 0.3, 0.5, 0.8, 1.3}) {
        const long v = max_occupancy(small, r);
        CHECK(v <= prev);
        CHECK(max_occupancy(big, r) >= v);
        prev = static_cast<double>(v);
    }
}

TEST_CASE("shift_config translates and inverts") {
    const ClassicalConfig a = cc({{0.0, 0.0}});
    const Vec s{1.0, 2.0};
    const ClassicalConfig moved = shift_config(a, s);
    CHECK(moved.points[0] == Vec{1.0, 2.0});
    CHECK(shift_config(cc({}), s).empty());
    const Vec minus_s{-1.0, -2.0};
    CHECK(shift_config(moved, minus_s).points[0] == a.points[0]);
}

TEST_CASE("hardcore_admissible is shift invariant") {
    RandomStream rng(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        ClassicalConfig c;
        const int n = 1 + rng.uniform_int(5);
        for (int i = 0; i < n; ++i)
            c.points.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        const Vec s{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const double r = 0.2 + rng.uniform() * 1.5;
        CHECK(hardcore_admissible(c, r) == hardcore_admissible(shift_config(c, s), r));
    }
}

TEST_CASE("box contains and enlargement") {
    const BoxRegion box = BoxRegion::cube({0.0, 0.0}, 1.0);
    const Vec inside{0.5, -0.5};
    const Vec edge{1.0, 0.0};
    const Vec outside{1.1, 0.0};
    CHECK(box.contains(inside));
    CHECK(box.contains(edge));
    CHECK_FALSE(box.contains(outside));
    CHECK(box.enlarged(0.2).contains(outside));
    CHECK(box.volume() == doctest::Approx(4.0));
    CHECK(box_inside(BoxRegion::cube({0.2, 0.2}, 0.5), box));
    CHECK_FALSE(box_inside(BoxRegion::cube({0.8, 0.0}, 0.5), box));
}

TEST_SUITE_END();
