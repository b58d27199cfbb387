#include "loopgas/loops.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopgas {

bool Path::closed() const {
    return std::equal(start().begin(), start().end(), end().begin());
}

Path Path::with_endpoints(Vec start, Vec end, int k, int M) {
    if (start.size() != end.size() || start.empty())
        throw std::invalid_argument("Path: endpoint dimensions must match");
    if (k < 1 || M < 1) throw std::invalid_argument("Path: need k >= 1, M >= 1");
    Path p;
    p.k = k;
    p.M = M;
    p.dim = static_cast<int>(start.size());
    p.pos.assign(static_cast<std::size_t>(k * M + 1) * p.dim, 0.0);
    std::copy(start.begin(), start.end(), p.at(0).begin());
    std::copy(end.begin(), end.end(), p.at(p.n_slices()).begin());
    return p;
}

ClassicalConfig LoopConfiguration::base_points() const {
    ClassicalConfig cc;
    cc.points.reserve(loops.size());
    for (const Loop& l : loops)
        cc.points.emplace_back(l.start().begin(), l.start().end());
    return cc;
}

namespace {

void append_section(const Path& p, int j, ClassicalConfig& out) {
    for (int l = 0; l < p.k; ++l) {
        auto s = p.at(l * p.M + j);
        Vec v(s.begin(), s.end());
        bool dup = false;
        for (const Vec& q : out.points)
            if (q == v) { dup = true; break; }
        if (!dup) out.points.push_back(std::move(v));
    }
}

template <typename Members>
bool sections_admissible(const Members& members, double r) {
    if (members.empty()) return true;
    const double r2 = r * r;
    const int M = members.front().M;
    // Copy positions at each slice-aligned t in [0, beta], multiset semantics.
    std::vector<std::span<const double>> pts;
    for (int j = 0; j <= M; ++j) {
        pts.clear();
        for (const Path& p : members)
            for (int l = 0; l < p.k; ++l) pts.push_back(p.at(l * p.M + j));
        for (std::size_t a = 0; a + 1 < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (sq_distance(pts[a], pts[b]) < r2) return false;
    }
    return true;
}

}  // namespace

ClassicalConfig t_section(const Path& p, int j) {
    if (j < 0 || j > p.M)
        throw std::invalid_argument("t_section: slice index out of [0, M]");
    ClassicalConfig cc;
    append_section(p, j, cc);
    return cc;
}

ClassicalConfig section_of_config(const LoopConfiguration& c, int j) {
    ClassicalConfig cc;
    for (const Loop& l : c.loops) {
        if (j < 0 || j > l.M)
            throw std::invalid_argument("section_of_config: slice index out of [0, M]");
        append_section(l, j, cc);
    }
    return cc;
}

ClassicalConfig section_of_config(const PathCollection& c, int j) {
    ClassicalConfig cc;
    for (const Path& p : c.paths) {
        if (j < 0 || j > p.M)
            throw std::invalid_argument("section_of_config: slice index out of [0, M]");
        append_section(p, j, cc);
    }
    return cc;
}

long K_of(const LoopConfiguration& c) {
    long K = 0;
    for (const Loop& l : c.loops) K += l.k;
    return K;
}

long K_of(const PathCollection& c) {
    long K = 0;
    for (const Path& p : c.paths) K += p.k;
    return K;
}

long L_of(const LoopConfiguration& c) {
    long L = 1;
    for (const Loop& l : c.loops) L *= l.k;
    return L;
}

bool alpha_indicator(const BoxRegion& box, const Path& p) {
    for (int j = 0; j <= p.n_slices(); ++j)
        if (!box.contains(p.at(j))) return false;
    return true;
}

bool alpha_indicator(const BoxRegion& box, const LoopConfiguration& c) {
    for (const Loop& l : c.loops)
        if (!alpha_indicator(box, l)) return false;
    return true;
}

bool alpha_indicator(const BoxRegion& box, const PathCollection& c) {
    for (const Path& p : c.paths)
        if (!alpha_indicator(box, p)) return false;
    return true;
}

bool chi_indicator(const BoxRegion& box0, const Path& p) {
    for (int l = 1; l < p.k; ++l)
        if (box0.contains(p.at(l * p.M))) return false;
    return true;
}

bool chi_indicator(const BoxRegion& box0, const LoopConfiguration& c) {
    for (const Loop& l : c.loops)
        if (!chi_indicator(box0, l)) return false;
    return true;
}

bool chi_indicator(const BoxRegion& box0, const PathCollection& c) {
    for (const Path& p : c.paths)
        if (!chi_indicator(box0, p)) return false;
    return true;
}

bool admissible_r(const LoopConfiguration& c, double r) {
    return sections_admissible(c.loops, r);
}

bool admissible_r(const PathCollection& c, double r) {
    return sections_admissible(c.paths, r);
}

}  // namespace loopgas
