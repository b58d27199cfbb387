#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "loopgas/geometry.hpp"

namespace loopgas {

/// A time-discretized path of time-length multiplicity k: positions at
/// times j*beta/M for j = 0..k*M.  A loop is a path whose endpoints
/// coincide (pos(0) == pos(kM)); its base point is pos(0).
///
/// The copy of a path at period l (0 <= l < k) and local slice j
/// (0 <= j <= M) sits at global slice index l*M + j.
struct Path {
    int k = 1;       // time-length multiplicity
    int M = 1;       // slices per beta-period
    int dim = 0;
    std::vector<double> pos;  // (k*M + 1) * dim, flattened

    int n_slices() const { return k * M; }  // number of steps
    std::span<const double> at(int j) const {
        return {pos.data() + static_cast<std::size_t>(j) * dim,
                static_cast<std::size_t>(dim)};
    }
    std::span<double> at(int j) {
        return {pos.data() + static_cast<std::size_t>(j) * dim,
                static_cast<std::size_t>(dim)};
    }
    std::span<const double> start() const { return at(0); }
    std::span<const double> end() const { return at(n_slices()); }
    bool closed() const;

    static Path with_endpoints(Vec start, Vec end, int k, int M);
};

/// A Path which starts and ends at the same point.
using Loop = Path;

/// Finite collection of loops; the MCMC state.  Base points must be
/// pairwise distinct and hardcore-admissible at r (checked on demand,
/// not on construction).
struct LoopConfiguration {
    std::vector<Loop> loops;

    std::size_t size() const { return loops.size(); }
    bool empty() const { return loops.empty(); }
    ClassicalConfig base_points() const;
};

/// Ordered open paths with permuted endpoints: path j runs from x(j) to
/// y(perm(j)).
struct PathCollection {
    std::vector<Path> paths;
    std::vector<int> perm;  // the endpoint pairing, size == paths.size()
};

/// The t-section of a path at slice-aligned t = j*beta/M: the set of
/// copy positions {pos(l*M + j), l = 0..k-1}.  Exactly coincident copies
/// collapse (set semantics).
ClassicalConfig t_section(const Path& p, int j);

ClassicalConfig section_of_config(const LoopConfiguration& c, int j);
ClassicalConfig section_of_config(const PathCollection& c, int j);

/// Sum and product of member multiplicities (K = 0, L = 1 when empty).
long K_of(const LoopConfiguration& c);
long K_of(const PathCollection& c);
long L_of(const LoopConfiguration& c);

/// Dirichlet confinement indicator: 1 iff every slice position of every
/// member lies inside box.
bool alpha_indicator(const BoxRegion& box, const Path& p);
bool alpha_indicator(const BoxRegion& box, const LoopConfiguration& c);
bool alpha_indicator(const BoxRegion& box, const PathCollection& c);

/// Control-point indicator: 1 iff for every member with multiplicity
/// k >= 2 the positions at control times l*beta (l = 1..k-1) lie outside
/// box0 (the inner cube).  Members with k = 1 impose nothing.
bool chi_indicator(const BoxRegion& box0, const Path& p);
bool chi_indicator(const BoxRegion& box0, const LoopConfiguration& c);
bool chi_indicator(const BoxRegion& box0, const PathCollection& c);

/// Hard-core admissibility of all sections at slice-aligned times
/// t = j*beta/M, j = 0..M (multiset semantics: coincident copies violate).
bool admissible_r(const LoopConfiguration& c, double r);
bool admissible_r(const PathCollection& c, double r);

}  // namespace loopgas
