#include <doctest.h>

#include "loopgas/loops.hpp"
#include "loopgas/sampling.hpp"

using namespace loopgas;

namespace {

// A static loop: all positions at the base point.
Loop static_loop(Vec base, int k, int M) {
    Loop l = Path::with_endpoints(base, base, k, M);
    for (int j = 0; j <= l.n_slices(); ++j)
        std::copy(base.begin(), base.end(), l.at(j).begin());
    return l;
}

}  // namespace

TEST_SUITE_BEGIN("loops");

TEST_CASE("t_section unrolls copy positions") {
    const Vec a{0.0}, b{1.0};
    Loop p = Path::with_endpoints(a, b, 1, 4);
    CHECK(t_section(p, 0).points[0] == a);
    CHECK_THROWS(t_section(p, 5));

    // k = 2 loop: section at slice j holds positions j and j + M
    RandomStream rng(5, 0);
    Loop l2 = sample_bridge({0.0}, {0.0}, 2, 2, 1.0, rng);
    const ClassicalConfig sec = t_section(l2, 1);
    REQUIRE(sec.size() == 2);
    CHECK(sec.points[0][0] == l2.at(1)[0]);
    CHECK(sec.points[1][0] == l2.at(3)[0]);

    Loop l3 = sample_bridge({0.0}, {0.0}, 3, 2, 1.0, rng);
    for (int j = 0; j <= 2; ++j) CHECK(t_section(l3, j).size() <= 3);
}

TEST_CASE("section_of_config unions member sections") {
    CHECK(section_of_config(LoopConfiguration{}, 0).empty());
    LoopConfiguration c;
    c.loops.push_back(static_loop({0.0, 0.0}, 1, 2));
    c.loops.push_back(static_loop({1.0, 0.0}, 1, 2));
    const ClassicalConfig sec = section_of_config(c, 0);
    REQUIRE(sec.size() == 2);
    // coincident copies collapse to one point
    LoopConfiguration one;
    one.loops.push_back(static_loop({0.5, 0.5}, 2, 2));
    CHECK(section_of_config(one, 1).size() == 1);
}

TEST_CASE("K and L functionals") {
    LoopConfiguration c;
    c.loops.push_back(static_loop({0.0}, 1, 2));
    c.loops.push_back(static_loop({1.0}, 2, 2));
    c.loops.push_back(static_loop({2.0}, 3, 2));
    CHECK(K_of(c) == 6);
    CHECK(L_of(c) == 6);
    CHECK(K_of(LoopConfiguration{}) == 0);
    CHECK(L_of(LoopConfiguration{}) == 1);
    LoopConfiguration single;
    single.loops.push_back(static_loop({0.0}, 5, 2));
    CHECK(K_of(single) == 5);
    CHECK(L_of(single) == 5);
}

TEST_CASE("K and L are shift invariant") {
    RandomStream rng(7, 0);
    LoopConfiguration c;
    c.loops.push_back(sample_bridge({0.0}, {0.0}, 2, 4, 1.0, rng));
    c.loops.push_back(sample_bridge({1.0}, {1.0}, 3, 4, 1.0, rng));
    LoopConfiguration shifted = c;
    for (Loop& l : shifted.loops)
        for (int j = 0; j <= l.n_slices(); ++j) l.at(j)[0] += 2.5;
    CHECK(K_of(c) == K_of(shifted));
    CHECK(L_of(c) == L_of(shifted));
}

TEST_CASE("alpha indicator checks every slice position") {
    const BoxRegion box = BoxRegion::cube({0.0}, 1.0);
    LoopConfiguration c;
    c.loops.push_back(static_loop({0.5}, 1, 4));
    CHECK(alpha_indicator(box, c));
    Loop escaped = static_loop({0.5}, 1, 4);
    escaped.at(2)[0] = 1.5;
    c.loops.push_back(escaped);
    CHECK_FALSE(alpha_indicator(box, c));
    CHECK(alpha_indicator(box, LoopConfiguration{}));
    // monotone in the box
    LoopConfiguration d;
    d.loops.push_back(escaped);
    CHECK(alpha_indicator(BoxRegion::cube({0.0}, 2.0), d));
}

TEST_CASE("chi indicator constrains only control points of k >= 2 members") {
    const BoxRegion box0 = BoxRegion::cube({0.0}, 0.5);
    LoopConfiguration all_k1;
    all_k1.loops.push_back(static_loop({0.1}, 1, 2));
    all_k1.loops.push_back(static_loop({0.3}, 1, 2));
    CHECK(chi_indicator(box0, all_k1));  // k = 1 imposes nothing

    // k = 2 loop with its control point (slice M) inside box0
    Loop bad = static_loop({0.2}, 2, 2);
    LoopConfiguration c;
    c.loops.push_back(bad);
    CHECK_FALSE(chi_indicator(box0, c));

    // k = 3 loop with both control points outside box0
    Loop ok = static_loop({0.2}, 3, 2);
    ok.at(2)[0] = 0.8;
    ok.at(4)[0] = -0.9;
    LoopConfiguration c2;
    c2.loops.push_back(ok);
    CHECK(chi_indicator(box0, c2));
    // monotone: a smaller inner box keeps chi = 1
    CHECK(chi_indicator(BoxRegion::cube({0.0}, 0.25), c2));
}

TEST_CASE("admissible_r checks sections at every slice time") {
    LoopConfiguration c;
    c.loops.push_back(static_loop({0.0}, 1, 2));
    c.loops.push_back(static_loop({1.0}, 1, 2));
    CHECK(admissible_r(c, 0.5));
    CHECK(admissible_r(LoopConfiguration{}, 0.5));
    // crossing within r at an interior slice
    LoopConfiguration d = c;
    d.loops[1].at(1)[0] = 0.1;
    CHECK_FALSE(admissible_r(d, 0.5));
    // monotone in r
    CHECK(admissible_r(c, 0.3));
    // a k = 2 loop whose copies coincide violates any positive core
    LoopConfiguration self;
    self.loops.push_back(static_loop({0.0}, 2, 2));
    CHECK_FALSE(admissible_r(self, 0.5));
}

TEST_CASE("t=0 section of a configuration contains the base points") {
    RandomStream rng(9, 0);
    LoopConfiguration c;
    c.loops.push_back(sample_bridge({0.0}, {0.0}, 2, 4, 1.0, rng));
    c.loops.push_back(sample_bridge({3.0}, {3.0}, 1, 4, 1.0, rng));
    const ClassicalConfig sec = section_of_config(c, 0);
    for (const Loop& l : c.loops) {
        bool found = false;
        for (const Vec& p : sec.points)
            if (p[0] == l.at(0)[0]) found = true;
        CHECK(found);
    }
}

TEST_SUITE_END();
