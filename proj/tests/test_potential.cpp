#include <doctest.h>

#include <cmath>
#include <limits>

#include "loopgas/potential.hpp"
#include "loopgas/sampling.hpp"

using namespace loopgas;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

ClassicalConfig cc(std::initializer_list<Vec> pts) {
    ClassicalConfig c;
    for (const Vec& p : pts) c.points.push_back(p);
    return c;
}
}  // namespace

TEST_SUITE_BEGIN("potential");

TEST_CASE("evaluate respects core, profile and range") {
    const PotentialModel well = PotentialModel::smooth_well(1.0, 2.0, 1.0);
    CHECK(well(0.5) == kInf);
    CHECK(well(4.0) == 0.0);
    CHECK(well(2.0) == 0.0);
    // the bump is normalized: minimum -depth at the midpoint
    CHECK(well(1.5) == doctest::Approx(-1.0));
    const PotentialModel hc = PotentialModel::hard_core(1.0, 2.0);
    CHECK(hc(1.5) == 0.0);
    CHECK(hc(0.99) == kInf);
}

TEST_CASE("tabulated profile interpolates through its nodes") {
    std::vector<double> s{1.0, 1.25, 1.5, 1.75, 2.0};
    std::vector<double> v{0.0, -0.6, -1.0, -0.6, 0.0};
    const PotentialModel tab = PotentialModel::tabulated(1.0, 2.0, s, v);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(tab.profile(s[i]) == doctest::Approx(v[i]).epsilon(1e-12));
    // C2 spline: midpoint between nodes stays between neighbor values
    CHECK(tab.profile(1.375) < -0.5);
    CHECK(tab.profile(1.375) > -1.0);
}

TEST_CASE("constants of a nonnegative potential reduce to z") {
    const PotentialModel hc = PotentialModel::hard_core(0.5, 1.0);
    const PotentialConstants c = constants(hc, 0.5, 1.0, 2);
    CHECK(c.v_bar == 0.0);
    CHECK(c.v_bar1 == 0.0);
    CHECK(c.rho_bar == doctest::Approx(0.5));
    CHECK(c.stable);
}

TEST_CASE("constants evaluate the stability ratio") {
    // depth 1 well: v_bar = 1, rho_bar = 0.2 exp(1 * 2^2) ~ 10.9196
    const PotentialModel well = PotentialModel::smooth_well(1.0, 2.0, 1.0);
    const PotentialConstants c = constants(well, 0.2, 1.0, 2);
    CHECK(c.v_bar == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.rho_bar == doctest::Approx(10.9196300066).epsilon(1e-4));
    CHECK_FALSE(c.stable);
    CHECK(c.v_bar1 > 0.0);
}

TEST_CASE("pair_energy sums unordered pairs") {
    const PotentialModel well = PotentialModel::smooth_well(1.0, 2.0, 1.0);
    CHECK(pair_energy(cc({{0.0, 0.0}, {1.5, 0.0}}), well) == doctest::Approx(-1.0));
    CHECK(pair_energy(cc({{0.0, 0.0}}), well) == 0.0);
    CHECK(pair_energy(cc({{0.0, 0.0}, {5.0, 0.0}, {0.0, 5.0}}), well) == 0.0);
    CHECK(pair_energy(cc({{0.0, 0.0}, {0.5, 0.0}}), well) == kInf);
}

TEST_CASE("cross_energy has no half factor and is symmetric") {
    const PotentialModel well = PotentialModel::smooth_well(1.0, 2.0, 1.0);
    const ClassicalConfig a = cc({{0.0, 0.0}});
    const ClassicalConfig b = cc({{1.5, 0.0}});
    CHECK(cross_energy(a, b, well) == doctest::Approx(-1.0));
    CHECK(cross_energy(a, cc({}), well) == 0.0);
    CHECK(cross_energy(cc({{0.0, 0.0}}), cc({{0.5, 0.0}}), well) == kInf);
    RandomStream rng(3, 0);
    for (int t = 0; t < 20; ++t) {
        ClassicalConfig u, v;
        for (int i = 0; i < 3; ++i) u.points.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        for (int i = 0; i < 2; ++i) v.points.push_back({rng.uniform(2.5, 5), rng.uniform(-2, 2)});
        CHECK(cross_energy(u, v, well) == cross_energy(v, u, well));
    }
}

TEST_CASE("pair_energy additivity over disjoint unions") {
    const PotentialModel well = PotentialModel::smooth_well(0.3, 0.9, 0.7);
    RandomStream rng(17, 0);
    for (int t = 0; t < 30; ++t) {
        ClassicalConfig a, b, both;
        for (int i = 0; i < 3; ++i) {
            Vec p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            a.points.push_back(p);
            both.points.push_back(p);
        }
        for (int i = 0; i < 2; ++i) {
            Vec p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            b.points.push_back(p);
            both.points.push_back(p);
        }
        const double ea = pair_energy(a, well);
        const double eb = pair_energy(b, well);
        const double ex = cross_energy(a, b, well);
        const double eu = pair_energy(both, well);
        if (eu == kInf) {
            CHECK((ea == kInf || eb == kInf || ex == kInf));
        } else {
            CHECK(eu == doctest::Approx(ea + eb + ex).epsilon(1e-12));
        }
    }
}

TEST_CASE("one-point classical bound against admissible environments") {
    // randomized search for violations of cross_energy({x}, cc) >= -v_bar R^d/r^d
    const double r = 0.5, R = 1.25, depth = 0.8;
    const PotentialModel well = PotentialModel::smooth_well(r, R, depth);
    const PotentialConstants c = constants(well, 0.1, 1.0, 2);
    const double floor = -c.v_bar * std::pow(R / r, 2);
    RandomStream rng(23, 0);
    for (int t = 0; t < 200; ++t) {
        ClassicalConfig env;
        for (int i = 0; i < 30; ++i) {
            Vec p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            env.points.push_back(p);
            if (!hardcore_admissible(env, r)) env.points.pop_back();
        }
        const ClassicalConfig probe = cc({{rng.uniform(-3, 3), rng.uniform(-3, 3)}});
        const double e = cross_energy(probe, env, well);
        if (e != kInf) CHECK(e >= floor - 1e-12);
    }
}

TEST_CASE("locality: far points do not change energies") {
    const PotentialModel well = PotentialModel::smooth_well(0.5, 1.0, 1.0);
    ClassicalConfig a = cc({{0.0, 0.0}, {0.8, 0.0}, {10.0, 0.0}});
    const double e1 = pair_energy(a, well);
    a.points[2] = {12.0, 3.0};  // still farther than R from everything
    CHECK(pair_energy(a, well) == e1);
}

TEST_CASE("invalid potentials are rejected") {
    CHECK_THROWS_AS(PotentialModel::hard_core(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel::hard_core(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel::tabulated(1.0, 2.0, {1.0, 2.0}, {0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        PotentialModel::tabulated(1.0, 2.0, {1.0, 2.0},
                                  {0.0, std::numeric_limits<double>::quiet_NaN()}),
        std::invalid_argument);
}

TEST_SUITE_END();
