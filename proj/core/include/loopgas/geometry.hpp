#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loopgas {

/// A point in R^d.
using Vec = std::vector<double>;

double sq_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

/// Axis-aligned cube: center c, half side L, so the region is
/// [c_1 - L, c_1 + L] x ... x [c_d - L, c_d + L].
struct BoxRegion {
    Vec center;
    double half_side = 0.0;
    int dim = 0;

    static BoxRegion cube(Vec center, double half_side);

    bool contains(std::span<const double> p) const;
    double volume() const;
    double side() const { return 2.0 * half_side; }
    /// The cube enlarged by delta on every face.
    BoxRegion enlarged(double delta) const;
    /// Chebyshev distance from p to this cube (0 if inside).
    double max_norm_distance(std::span<const double> p) const;
};

/// True iff inner lies entirely inside outer.
bool box_inside(const BoxRegion& inner, const BoxRegion& outer);

/// A finite set of points in R^d.  Points are compared with exact floating
/// equality; samplers produce distinct points almost surely, so configs are
/// constructed, never deduplicated by tolerance.
struct ClassicalConfig {
    std::vector<Vec> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Minimum Euclidean distance over distinct point pairs; +inf for fewer
/// than two points.
double min_pair_distance(const ClassicalConfig& cc);

/// True iff all pairwise distances are >= r (inclusive).
bool hardcore_admissible(const ClassicalConfig& cc, double r);

/// Occupancy cap ceil((2L)^d / r^d): any config with pairwise distances
/// >= r inside the cube has at most this many points (almost surely).
long max_occupancy(const BoxRegion& box, double r);

/// Translate every point by s.
ClassicalConfig shift_config(const ClassicalConfig& cc, std::span<const double> s);

}  // namespace loopgas
