#include "loopgas/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopgas {

double sq_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double u = a[c] - b[c];
        s += u * u;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(sq_distance(a, b));
}

BoxRegion BoxRegion::cube(Vec center, double half_side) {
    if (half_side <= 0.0)
        throw std::invalid_argument("BoxRegion: half_side must be positive");
    if (center.empty())
        throw std::invalid_argument("BoxRegion: dim must be >= 1");
    BoxRegion b;
    b.dim = static_cast<int>(center.size());
    b.center = std::move(center);
    b.half_side = half_side;
    return b;
}

bool BoxRegion::contains(std::span<const double> p) const {
    for (int c = 0; c < dim; ++c) {
        if (std::abs(p[static_cast<std::size_t>(c)] - center[static_cast<std::size_t>(c)]) > half_side)
            return false;
    }
    return true;
}

double BoxRegion::volume() const {
    return std::pow(2.0 * half_side, dim);
}

BoxRegion BoxRegion::enlarged(double delta) const {
    BoxRegion b = *this;
    b.half_side += delta;
    return b;
}

double BoxRegion::max_norm_distance(std::span<const double> p) const {
    double m = 0.0;
    for (int c = 0; c < dim; ++c) {
        const double u = std::abs(p[static_cast<std::size_t>(c)] - center[static_cast<std::size_t>(c)]) - half_side;
        if (u > m) m = u;
    }
    return m;
}

bool box_inside(const BoxRegion& inner, const BoxRegion& outer) {
    if (inner.dim != outer.dim) return false;
    for (int c = 0; c < inner.dim; ++c) {
        const std::size_t i = static_cast<std::size_t>(c);
        if (inner.center[i] - inner.half_side < outer.center[i] - outer.half_side) return false;
        if (inner.center[i] + inner.half_side > outer.center[i] + outer.half_side) return false;
    }
    return true;
}

double min_pair_distance(const ClassicalConfig& cc) {
    const std::size_t n = cc.points.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = sq_distance(cc.points[i], cc.points[j]);
            if (d2 < best) best = d2;
        }
    return std::sqrt(best);
}

bool hardcore_admissible(const ClassicalConfig& cc, double r) {
    return min_pair_distance(cc) >= r;
}

long max_occupancy(const BoxRegion& box, double r) {
    double q = std::pow(box.side(), box.dim) / std::pow(r, box.dim);
    // Guard against e.g. 16.000000000000004 ceiling to 17.
    const double nearest = std::round(q);
    if (std::abs(q - nearest) < 1e-9 * std::max(1.0, nearest)) q = nearest;
    return static_cast<long>(std::ceil(q));
}

ClassicalConfig shift_config(const ClassicalConfig& cc, std::span<const double> s) {
    ClassicalConfig out;
    out.points.reserve(cc.points.size());
    for (const Vec& p : cc.points) {
        Vec q(p.size());
        for (std::size_t c = 0; c < p.size(); ++c) q[c] = p[c] + s[c];
        out.points.push_back(std::move(q));
    }
    return out;
}

}  // namespace loopgas
