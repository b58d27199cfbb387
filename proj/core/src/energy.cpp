#include "loopgas/energy.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace loopgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates sum_j E_j over local slices; +inf short-circuits.  The hard
// core is checked at j = 0..M, finite terms accumulate for j = 0..M-1.
struct SliceAccumulator {
    double sum = 0.0;
    bool hard = false;
};

inline void add_pair(SliceAccumulator& acc, std::span<const double> a,
                     std::span<const double> b, const PotentialModel& V,
                     double r2, double R2, bool weight) {
    const double d2 = sq_distance(a, b);
    if (d2 < r2) {
        acc.hard = true;
        return;
    }
    if (weight && d2 < R2) acc.sum += V.profile(std::sqrt(d2));
}

int common_M(std::span<const Path> members) {
    int M = members.empty() ? 1 : members.front().M;
    for (const Path& p : members)
        if (p.M != M)
            throw std::invalid_argument("energy: members must share slices_per_period");
    return M;
}

}  // namespace

double path_self_energy(const Path& p, const PotentialModel& V, double beta) {
    if (p.k < 2) return 0.0;
    const double r2 = V.core_r() * V.core_r();
    const double R2 = V.range_R() * V.range_R();
    SliceAccumulator acc;
    for (int j = 0; j <= p.M; ++j) {
        const bool weight = j < p.M;
        for (int l = 0; l + 1 < p.k; ++l)
            for (int l2 = l + 1; l2 < p.k; ++l2) {
                add_pair(acc, p.at(l * p.M + j), p.at(l2 * p.M + j), V, r2, R2, weight);
                if (acc.hard) return kInf;
            }
    }
    return (beta / p.M) * acc.sum;
}

double path_pair_energy(const Path& p, const Path& q, const PotentialModel& V,
                        double beta) {
    if (p.M != q.M)
        throw std::invalid_argument("path_pair_energy: paths must share M");
    const double r2 = V.core_r() * V.core_r();
    const double R2 = V.range_R() * V.range_R();
    SliceAccumulator acc;
    for (int j = 0; j <= p.M; ++j) {
        const bool weight = j < p.M;
        for (int l = 0; l < p.k; ++l)
            for (int l2 = 0; l2 < q.k; ++l2) {
                add_pair(acc, p.at(l * p.M + j), q.at(l2 * q.M + j), V, r2, R2, weight);
                if (acc.hard) return kInf;
            }
    }
    return (beta / p.M) * acc.sum;
}

double collection_energy(std::span<const Path> members, const PotentialModel& V,
                         double beta) {
    common_M(members);
    double h = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double s = path_self_energy(members[i], V, beta);
        if (s == kInf) return kInf;
        h += s;
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double c = path_pair_energy(members[i], members[j], V, beta);
            if (c == kInf) return kInf;
            h += c;
        }
    }
    return h;
}

double collection_energy(const LoopConfiguration& c, const PotentialModel& V,
                         double beta) {
    return collection_energy(std::span<const Path>(c.loops), V, beta);
}

double collection_energy(const PathCollection& c, const PotentialModel& V,
                         double beta) {
    return collection_energy(std::span<const Path>(c.paths), V, beta);
}

double collections_cross_energy(std::span<const Path> a, std::span<const Path> b,
                                const PotentialModel& V, double beta) {
    double h = 0.0;
    for (const Path& p : a)
        for (const Path& q : b) {
            const double c = path_pair_energy(p, q, V, beta);
            if (c == kInf) return kInf;
            h += c;
        }
    return h;
}

double combined_energy(const PathCollection& pc, const LoopConfiguration& lc,
                       const PotentialModel& V, double beta) {
    const double a = collection_energy(pc, V, beta);
    if (a == kInf) return kInf;
    const double b = collection_energy(lc, V, beta);
    if (b == kInf) return kInf;
    const double c = collections_cross_energy(std::span<const Path>(pc.paths),
                                              std::span<const Path>(lc.loops), V, beta);
    if (c == kInf) return kInf;
    return a + b + c;
}

double external_cc_energy(std::span<const Path> members, const ClassicalConfig& ext,
                          const PotentialModel& V, double beta) {
    if (members.empty() || ext.empty()) return 0.0;
    const int M = common_M(members);
    const double r2 = V.core_r() * V.core_r();
    const double R2 = V.range_R() * V.range_R();
    const double beta_over_M = beta / M;
    double h = 0.0;
    for (const Path& p : members) {
        // Only external points within R of the path's bounding box matter.
        Vec lo(p.at(0).begin(), p.at(0).end()), hi = lo;
        for (int j = 1; j <= p.n_slices(); ++j) {
            auto s = p.at(j);
            for (int c = 0; c < p.dim; ++c) {
                lo[static_cast<std::size_t>(c)] = std::min(lo[static_cast<std::size_t>(c)], s[c]);
                hi[static_cast<std::size_t>(c)] = std::max(hi[static_cast<std::size_t>(c)], s[c]);
            }
        }
        for (const Vec& x : ext.points) {
            bool reachable = true;
            for (int c = 0; c < p.dim && reachable; ++c) {
                const std::size_t ci = static_cast<std::size_t>(c);
                if (x[ci] < lo[ci] - V.range_R() || x[ci] > hi[ci] + V.range_R())
                    reachable = false;
            }
            if (!reachable) continue;
            SliceAccumulator acc;
            for (int j = 0; j <= M; ++j) {
                const bool weight = j < M;
                for (int l = 0; l < p.k; ++l) {
                    add_pair(acc, p.at(l * M + j), x, V, r2, R2, weight);
                    if (acc.hard) return kInf;
                }
            }
            h += beta_over_M * acc.sum;
        }
    }
    return h;
}

double external_lc_energy(std::span<const Path> members,
                          const LoopConfiguration& boundary,
                          const PotentialModel& V, double beta) {
    return collections_cross_energy(members, std::span<const Path>(boundary.loops), V,
                                    beta);
}

double energy_lower_bound(long K, const PotentialConstants& consts, double beta,
                          double core_r, double range_R, int dim) {
    return -beta * consts.v_bar * std::pow(range_R / core_r, dim) *
           static_cast<double>(K);
}

EnergyBreakdown energy_breakdown(std::span<const Path> members,
                                 const ClassicalConfig& ext,
                                 const PotentialModel& V, double beta) {
    EnergyBreakdown b;
    for (const Path& p : members) b.self += path_self_energy(p, V, beta);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            b.internal_pairs += path_pair_energy(members[i], members[j], V, beta);
    b.external = external_cc_energy(members, ext, V, beta);
    b.total = b.self + b.internal_pairs + b.external;
    return b;
}

double classical_pair_sum(std::span<const double> pts, int dim,
                          const PotentialModel& V, int grid_threshold) {
    const int n = static_cast<int>(pts.size()) / dim;
    const double r2 = V.core_r() * V.core_r();
    const double R2 = V.range_R() * V.range_R();
    auto point = [&](int i) {
        return std::span<const double>(pts.data() + static_cast<std::size_t>(i) * dim,
                                       static_cast<std::size_t>(dim));
    };
    double sum = 0.0;
    auto accumulate = [&](int i, int j) -> bool {
        const double d2 = sq_distance(point(i), point(j));
        if (d2 < r2) return false;
        if (d2 < R2) sum += V.profile(std::sqrt(d2));
        return true;
    };
    if (n <= grid_threshold) {
        for (int i = 0; i + 1 < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!accumulate(i, j)) return kInf;
        return sum;
    }
    // Cell grid with cell size R; exact neighbor enumeration within R.
    const double cell = V.range_R();
    std::map<std::vector<int>, std::vector<int>> cells;
    std::vector<int> key(static_cast<std::size_t>(dim));
    for (int i = 0; i < n; ++i) {
        auto p = point(i);
        for (int c = 0; c < dim; ++c)
            key[static_cast<std::size_t>(c)] =
                static_cast<int>(std::floor(p[static_cast<std::size_t>(c)] / cell));
        cells[key].push_back(i);
    }
    std::vector<int> nb(static_cast<std::size_t>(dim));
    for (const auto& [ck, ids] : cells) {
        // Within-cell pairs.
        for (std::size_t a = 0; a + 1 < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b)
                if (!accumulate(ids[a], ids[b])) return kInf;
        // Pairs with lexicographically greater neighbor cells.
        const long n_offsets = static_cast<long>(std::pow(3.0, dim));
        for (long off = 0; off < n_offsets; ++off) {
            long rem = off;
            bool positive = false, seen_nonzero = false;
            for (int c = 0; c < dim; ++c) {
                const int o = static_cast<int>(rem % 3) - 1;
                rem /= 3;
                nb[static_cast<std::size_t>(c)] = ck[static_cast<std::size_t>(c)] + o;
                if (!seen_nonzero && o != 0) {
                    seen_nonzero = true;
                    positive = o > 0;
                }
            }
            if (!seen_nonzero || !positive) continue;
            const auto it = cells.find(nb);
            if (it == cells.end()) continue;
            for (int i : ids)
                for (int j : it->second)
                    if (!accumulate(i, j)) return kInf;
        }
    }
    return sum;
}

}  // namespace loopgas
