#pragma once

#include <string>
#include <vector>

#include "loopgas/geometry.hpp"

namespace loopgas {

/// Two-body radial potential with a hard core of diameter r and finite
/// interaction radius R:
///   V(s) = +inf            for s <  r,
///   V(s) = profile(s)      for r <= s < R,
///   V(s) = 0               for s >= R.
/// The profile must be finite (and C^2) on [r, R].
class PotentialModel {
public:
    enum class Family { hard_core, smooth_well, tabulated };

    /// Pure hard core: profile identically zero on [r, R].
    static PotentialModel hard_core(double core_r, double range_R);

    /// Smoothed square well -A * w((s-r)/(R-r)) with the C^2 bump
    /// w(u) = 64 u^3 (1-u)^3 (so min V = -A for A > 0).
    static PotentialModel smooth_well(double core_r, double range_R, double depth);

    /// Tabulated profile on [r, R], interpolated with a natural cubic
    /// spline (C^2).  Nodes must be strictly increasing and span [r, R].
    static PotentialModel tabulated(double core_r, double range_R,
                                    std::vector<double> s, std::vector<double> v);

    double core_r() const { return r_; }
    double range_R() const { return R_; }
    Family family() const { return family_; }
    double well_depth() const { return depth_; }
    const std::vector<double>& table_s() const { return tab_s_; }
    const std::vector<double>& table_v() const { return tab_v_; }

    /// V at a given distance (extended real; +inf inside the core).
    double operator()(double dist) const;

    /// The finite profile on [r, R].
    double profile(double s) const;
    double profile_derivative(double s) const;

private:
    Family family_ = Family::hard_core;
    double r_ = 0.0, R_ = 0.0;
    double depth_ = 0.0;
    std::vector<double> tab_s_, tab_v_;
    std::vector<double> spline_m_;  // second derivatives at nodes
};

/// Derived constants of the pair (V, z, beta):
///   v_bar  = max(0, -min V on [r, R])
///   v_bar1 = max |V'| on [r, R]
///   rho_bar = z exp(beta v_bar R^d / r^d), stable iff rho_bar < 1.
struct PotentialConstants {
    double v_bar = 0.0;
    double v_bar1 = 0.0;
    double rho_bar = 0.0;
    bool stable = false;
};

/// Profile extrema found by dense sampling (n_samples points of [r, R]).
PotentialConstants constants(const PotentialModel& V, double z, double beta, int dim,
                             int n_samples = 4096);

/// Energy of a finite configuration: sum of V over unordered distinct
/// pairs (+inf on any core violation).
double pair_energy(const ClassicalConfig& cc, const PotentialModel& V);

/// Interaction energy between two disjoint configurations: sum of V over
/// all cross pairs, no 1/2 factor.
double cross_energy(const ClassicalConfig& a, const ClassicalConfig& b,
                    const PotentialModel& V);

}  // namespace loopgas
