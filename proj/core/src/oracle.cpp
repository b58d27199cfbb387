#include "loopgas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

// Axis-aligned rectangle (the box difference is made of slabs, not cubes).
struct Rect {
    Vec lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
};

Rect rect_of(const BoxRegion& b) {
    Rect r;
    r.lo.resize(static_cast<std::size_t>(b.dim));
    r.hi.resize(static_cast<std::size_t>(b.dim));
    for (int c = 0; c < b.dim; ++c) {
        r.lo[static_cast<std::size_t>(c)] = b.center[static_cast<std::size_t>(c)] - b.half_side;
        r.hi[static_cast<std::size_t>(c)] = b.center[static_cast<std::size_t>(c)] + b.half_side;
    }
    return r;
}

// outer \ inner as up to 2d disjoint slabs.
std::vector<Rect> rect_difference(const Rect& outer, const Rect& inner) {
    std::vector<Rect> out;
    Rect core = outer;
    for (int c = 0; c < outer.dim(); ++c) {
        const std::size_t ci = static_cast<std::size_t>(c);
        if (inner.lo[ci] > core.lo[ci]) {
            Rect slab = core;
            slab.hi[ci] = inner.lo[ci];
            out.push_back(slab);
        }
        if (inner.hi[ci] < core.hi[ci]) {
            Rect slab = core;
            slab.lo[ci] = inner.hi[ci];
            out.push_back(slab);
        }
        core.lo[ci] = std::max(core.lo[ci], inner.lo[ci]);
        core.hi[ci] = std::min(core.hi[ci], inner.hi[ci]);
    }
    return out;
}

struct PointGrid {
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

PointGrid tensor_grid(const Rect& r, int per_axis) {
    const int d = r.dim();
    std::vector<std::vector<double>> ax_nodes(static_cast<std::size_t>(d));
    std::vector<std::vector<double>> ax_w(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c)
        gauss_legendre(per_axis, r.lo[static_cast<std::size_t>(c)],
                       r.hi[static_cast<std::size_t>(c)],
                       ax_nodes[static_cast<std::size_t>(c)], ax_w[static_cast<std::size_t>(c)]);
    PointGrid g;
    long total = 1;
    for (int c = 0; c < d; ++c) total *= per_axis;
    g.nodes.reserve(static_cast<std::size_t>(total));
    g.weights.reserve(static_cast<std::size_t>(total));
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        Vec p(static_cast<std::size_t>(d));
        double w = 1.0;
        for (int c = 0; c < d; ++c) {
            const int i = static_cast<int>(rem % per_axis);
            rem /= per_axis;
            p[static_cast<std::size_t>(c)] = ax_nodes[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            w *= ax_w[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        }
        g.nodes.push_back(std::move(p));
        g.weights.push_back(w);
    }
    return g;
}

PointGrid union_grid(const std::vector<Rect>& rects, int per_axis) {
    PointGrid g;
    for (const Rect& r : rects) {
        PointGrid part = tensor_grid(r, per_axis);
        g.nodes.insert(g.nodes.end(), part.nodes.begin(), part.nodes.end());
        g.weights.insert(g.weights.end(), part.weights.begin(), part.weights.end());
    }
    return g;
}

double gauss_kernel(std::span<const double> a, std::span<const double> b, double tau,
                    int d) {
    return std::pow(kTwoPi * tau, -0.5 * d) * std::exp(-sq_distance(a, b) / (2.0 * tau));
}

/// One member of the integrand system: a loop (closes to its base) or an
/// open bridge (fixed endpoints).  Bases are either integrated over a
/// grid or fixed points (a singleton grid with unit weight).
struct MemberSpec {
    int k = 1;
    PointGrid base;          // nodes with weights (singleton, weight 1, if fixed)
    bool closes_to_base = true;
    Vec end_point;           // when !closes_to_base
    bool chi_controls = false;
};

/// Integral over the member system of the product of Gaussian chain
/// measures, the per-slice Boltzmann factors of the discretized target,
/// the confinement alpha (grids are interior to the box), the hard core
/// on slices 0..M, and the control-point exclusion from box0.
double integrate_system(const std::vector<MemberSpec>& members,
                        const SimulationParams& params, int G,
                        const BoxRegion* box0) {
    const int d = params.box.dim;
    const int M = params.M;
    const double dt = params.beta / M;
    const double r2 = params.V.core_r() * params.V.core_r();

    // Copies: (member, period); copy 0 is the base slot, copies >= 1 are
    // control slots valued on the interior grid.
    struct Copy {
        int member;
        int period;
    };
    std::vector<Copy> copies;
    for (int m = 0; m < static_cast<int>(members.size()); ++m)
        for (int l = 0; l < members[static_cast<std::size_t>(m)].k; ++l)
            copies.push_back({m, l});
    const int K = static_cast<int>(copies.size());
    if (K == 0) return 1.0;

    const PointGrid interior = tensor_grid(rect_of(params.box), G);
    const long Gd = static_cast<long>(interior.size());

    // Operation budget, reported before execution.
    long n_s0 = 1;
    for (const Copy& c : copies)
        n_s0 *= (c.period == 0)
                    ? static_cast<long>(members[static_cast<std::size_t>(c.member)].base.size())
                    : Gd;
    double state_sz = 1.0;
    for (int i = 0; i < K; ++i) state_sz *= static_cast<double>(Gd);
    const double ops = static_cast<double>(n_s0) * M * K * state_sz *
                       static_cast<double>(Gd);
    if (state_sz > 1e6 || ops > 4e9)
        throw std::invalid_argument(
            "oracle: tensor grid too large (states " + std::to_string(state_sz) +
            ", ops " + std::to_string(ops) + "); reduce grid, n_max or k_max");

    // Pairwise potential between interior nodes (+inf marks the core).
    std::vector<double> vtab(static_cast<std::size_t>(Gd * Gd));
    for (long a = 0; a < Gd; ++a)
        for (long b = 0; b < Gd; ++b)
            vtab[static_cast<std::size_t>(a * Gd + b)] =
                params.V(distance(interior.nodes[static_cast<std::size_t>(a)],
                                  interior.nodes[static_cast<std::size_t>(b)]));
    // Static boundary CC field per interior node.
    std::vector<double> vbnd(static_cast<std::size_t>(Gd), 0.0);
    for (long a = 0; a < Gd; ++a) {
        double e = 0.0;
        for (const Vec& p : params.boundary_cc.points)
            e += params.V(distance(interior.nodes[static_cast<std::size_t>(a)], p));
        vbnd[static_cast<std::size_t>(a)] = e;
    }

    // Combined weight x Boltzmann factor of a mid-slice state.
    std::vector<long> stride(static_cast<std::size_t>(K));
    long total_states = 1;
    for (int c = K - 1; c >= 0; --c) {
        stride[static_cast<std::size_t>(c)] = total_states;
        total_states *= Gd;
    }
    std::vector<double> wb(static_cast<std::size_t>(total_states));
    std::vector<long> idx(static_cast<std::size_t>(K), 0);
    for (long s = 0; s < total_states; ++s) {
        long rem = s;
        for (int c = 0; c < K; ++c) {
            idx[static_cast<std::size_t>(c)] = rem / stride[static_cast<std::size_t>(c)];
            rem %= stride[static_cast<std::size_t>(c)];
        }
        double e = 0.0;
        double w = 1.0;
        for (int c = 0; c < K && e < kInf; ++c) {
            const long g = idx[static_cast<std::size_t>(c)];
            w *= interior.weights[static_cast<std::size_t>(g)];
            e += vbnd[static_cast<std::size_t>(g)];
            for (int c2 = c + 1; c2 < K; ++c2) {
                const double v =
                    vtab[static_cast<std::size_t>(g * Gd + idx[static_cast<std::size_t>(c2)])];
                e += v;
                if (e == kInf) break;
            }
        }
        wb[static_cast<std::size_t>(s)] = (e == kInf) ? 0.0 : w * std::exp(-dt * e);
    }

    // Enumerate initial tuples s0 = (base or control value per copy).
    std::vector<long> s0_size(static_cast<std::size_t>(K));
    for (int c = 0; c < K; ++c)
        s0_size[static_cast<std::size_t>(c)] =
            (copies[static_cast<std::size_t>(c)].period == 0)
                ? static_cast<long>(
                      members[static_cast<std::size_t>(copies[static_cast<std::size_t>(c)].member)]
                          .base.size())
                : Gd;

    auto pos0_of = [&](int c, long j) -> std::span<const double> {
        const Copy& cp = copies[static_cast<std::size_t>(c)];
        if (cp.period == 0)
            return members[static_cast<std::size_t>(cp.member)].base.nodes[static_cast<std::size_t>(j)];
        return interior.nodes[static_cast<std::size_t>(j)];
    };
    auto w0_of = [&](int c, long j) -> double {
        const Copy& cp = copies[static_cast<std::size_t>(c)];
        const MemberSpec& ms = members[static_cast<std::size_t>(cp.member)];
        if (cp.period == 0) return ms.base.weights[static_cast<std::size_t>(j)];
        double w = interior.weights[static_cast<std::size_t>(j)];
        if (ms.chi_controls && box0 &&
            box0->contains(interior.nodes[static_cast<std::size_t>(j)]))
            w = 0.0;
        return w;
    };

    std::vector<long> s0(static_cast<std::size_t>(K), 0);
    std::vector<double> cur(static_cast<std::size_t>(total_states));
    std::vector<double> nxt(static_cast<std::size_t>(total_states));
    std::vector<std::span<const double>> pos0(static_cast<std::size_t>(K));
    std::vector<std::span<const double>> closure(static_cast<std::size_t>(K));
    double total = 0.0;

    for (;;) {
        // Weight, energy and hard core of the initial slice.
        double w0 = 1.0;
        for (int c = 0; c < K; ++c) {
            w0 *= w0_of(c, s0[static_cast<std::size_t>(c)]);
            pos0[static_cast<std::size_t>(c)] = pos0_of(c, s0[static_cast<std::size_t>(c)]);
        }
        if (w0 != 0.0) {
            double e0 = 0.0;
            for (int c = 0; c < K && e0 < kInf; ++c) {
                for (int c2 = c + 1; c2 < K; ++c2) {
                    const double d2 = sq_distance(pos0[static_cast<std::size_t>(c)],
                                                  pos0[static_cast<std::size_t>(c2)]);
                    if (d2 < r2) {
                        e0 = kInf;
                        break;
                    }
                    e0 += params.V(std::sqrt(d2));
                }
                if (e0 < kInf)
                    for (const Vec& p : params.boundary_cc.points)
                        e0 += params.V(distance(pos0[static_cast<std::size_t>(c)], p));
            }
            if (e0 < kInf) {
                // Closure positions at slice M (the shifted tuple).
                for (int c = 0; c < K; ++c) {
                    const Copy& cp = copies[static_cast<std::size_t>(c)];
                    const MemberSpec& ms = members[static_cast<std::size_t>(cp.member)];
                    if (cp.period + 1 < ms.k)
                        closure[static_cast<std::size_t>(c)] = pos0[static_cast<std::size_t>(c + 1)];
                    else if (ms.closes_to_base) {
                        int c_base = c - cp.period;
                        closure[static_cast<std::size_t>(c)] = pos0[static_cast<std::size_t>(c_base)];
                    } else {
                        closure[static_cast<std::size_t>(c)] = ms.end_point;
                    }
                }
                bool closure_ok = true;
                for (int c = 0; c < K && closure_ok; ++c)
                    for (int c2 = c + 1; c2 < K; ++c2)
                        if (sq_distance(closure[static_cast<std::size_t>(c)],
                                        closure[static_cast<std::size_t>(c2)]) < r2) {
                            closure_ok = false;
                            break;
                        }
                if (closure_ok) {
                    double contrib;
                    if (M == 1) {
                        contrib = 1.0;
                        for (int c = 0; c < K; ++c)
                            contrib *= gauss_kernel(closure[static_cast<std::size_t>(c)],
                                                    pos0[static_cast<std::size_t>(c)], dt, d);
                    } else {
                        // First hop: fully factorized over copies.
                        for (long s = 0; s < total_states; ++s) cur[static_cast<std::size_t>(s)] = wb[static_cast<std::size_t>(s)];
                        for (int c = 0; c < K; ++c) {
                            std::vector<double> v(static_cast<std::size_t>(Gd));
                            for (long g = 0; g < Gd; ++g)
                                v[static_cast<std::size_t>(g)] =
                                    gauss_kernel(interior.nodes[static_cast<std::size_t>(g)],
                                                 pos0[static_cast<std::size_t>(c)], dt, d);
                            const long st = stride[static_cast<std::size_t>(c)];
                            for (long s = 0; s < total_states; ++s)
                                cur[static_cast<std::size_t>(s)] *=
                                    v[static_cast<std::size_t>((s / st) % Gd)];
                        }
                        // Mid transitions j -> j+1 for j = 1..M-2.
                        for (int j = 1; j + 1 <= M - 1; ++j) {
                            for (int c = 0; c < K; ++c) {
                                const long st = stride[static_cast<std::size_t>(c)];
                                std::fill(nxt.begin(), nxt.end(), 0.0);
                                for (long s = 0; s < total_states; ++s) {
                                    const double val = cur[static_cast<std::size_t>(s)];
                                    if (val == 0.0) continue;
                                    const long g = (s / st) % Gd;
                                    const long base_idx = s - g * st;
                                    for (long g2 = 0; g2 < Gd; ++g2)
                                        nxt[static_cast<std::size_t>(base_idx + g2 * st)] +=
                                            val * gauss_kernel(
                                                      interior.nodes[static_cast<std::size_t>(g2)],
                                                      interior.nodes[static_cast<std::size_t>(g)],
                                                      dt, d);
                                }
                                cur.swap(nxt);
                            }
                            for (long s = 0; s < total_states; ++s)
                                cur[static_cast<std::size_t>(s)] *= wb[static_cast<std::size_t>(s)];
                        }
                        // Close onto the shifted tuple, contracting copy by copy.
                        std::vector<double> work = cur;
                        long states = total_states;
                        for (int c = K - 1; c >= 0; --c) {
                            states /= Gd;
                            for (long s = 0; s < states; ++s) {
                                double acc = 0.0;
                                for (long g = 0; g < Gd; ++g)
                                    acc += work[static_cast<std::size_t>(s * Gd + g)] *
                                           gauss_kernel(closure[static_cast<std::size_t>(c)],
                                                        interior.nodes[static_cast<std::size_t>(g)],
                                                        dt, d);
                                work[static_cast<std::size_t>(s)] = acc;
                            }
                        }
                        contrib = work[0];
                    }
                    total += w0 * std::exp(-dt * e0) * contrib;
                }
            }
        }
        // Advance the mixed-radix initial tuple.
        int c = K - 1;
        for (; c >= 0; --c) {
            if (++s0[static_cast<std::size_t>(c)] < s0_size[static_cast<std::size_t>(c)]) break;
            s0[static_cast<std::size_t>(c)] = 0;
        }
        if (c < 0) break;
    }
    return total;
}

std::vector<std::vector<int>> k_vectors(int n, int k_cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 1);
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (;;) {
        out.push_back(cur);
        int i = n - 1;
        for (; i >= 0; --i) {
            if (++cur[static_cast<std::size_t>(i)] <= k_cap) break;
            cur[static_cast<std::size_t>(i)] = 1;
        }
        if (i < 0) break;
    }
    return out;
}

PointGrid singleton(const Vec& p) {
    PointGrid g;
    g.nodes.push_back(p);
    g.weights.push_back(1.0);
    return g;
}

// The z-weighted loop expansion over a base domain; shared by the
// partition function and the environment factor of the kernel.
std::vector<double> sector_masses(const SimulationParams& params, int n_max, int k_cap,
                                  int G, const PointGrid& base_domain,
                                  const BoxRegion* box0, bool chi_env,
                                  const std::vector<MemberSpec>& extra_members) {
    std::vector<double> masses;
    for (int n = 0; n <= n_max; ++n) {
        double sector = 0.0;
        for (const std::vector<int>& kvec : k_vectors(n, k_cap)) {
            double pref = 1.0 / factorial(n);
            std::vector<MemberSpec> members = extra_members;
            for (int i = 0; i < n; ++i) {
                MemberSpec m;
                m.k = kvec[static_cast<std::size_t>(i)];
                m.base = base_domain;
                m.closes_to_base = true;
                m.chi_controls = chi_env;
                members.push_back(std::move(m));
                pref *= std::pow(params.z, kvec[static_cast<std::size_t>(i)]) /
                        kvec[static_cast<std::size_t>(i)];
            }
            sector += pref * integrate_system(members, params, G, box0);
        }
        masses.push_back(sector);
    }
    return masses;
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: need 1 <= n <= 64");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[static_cast<std::size_t>(i)] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
        nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (b - a) * x + 0.5 * (a + b);
        weights[static_cast<std::size_t>(i)] = 0.5 * (b - a) * w;
        weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (b - a) * w;
    }
}

void QuadratureSpec::validate(const SimulationParams& params) const {
    if (n_max < 0 || n_max > 2)
        throw std::invalid_argument("oracle: n_max capped at 2");
    if (k_max < 1 || k_max > 2)
        throw std::invalid_argument("oracle: k_max capped at 2");
    if (M < 1 || M > 4) throw std::invalid_argument("oracle: M capped at 4");
    if (grid < 2 || grid > 16)
        throw std::invalid_argument("oracle: grid capped at 16 points per axis");
    if (params.M != M)
        throw std::invalid_argument("oracle: spec.M must match the simulation M");
    if (!params.boundary_lc.empty())
        throw std::invalid_argument("oracle: boundary loop configurations unsupported");
}

PartitionQuadrature quad_partition(const SimulationParams& params,
                                   const QuadratureSpec& spec) {
    spec.validate(params);
    const int k_cap = std::min(spec.k_max, params.k_max);
    PartitionQuadrature out;
    const PointGrid base_fine = tensor_grid(rect_of(params.box), spec.grid);
    const PointGrid base_coarse =
        tensor_grid(rect_of(params.box), std::max(2, spec.grid / 2));
    const std::vector<double> fine = sector_masses(params, spec.n_max, k_cap, spec.grid,
                                                   base_fine, nullptr, false, {});
    const std::vector<double> coarse =
        sector_masses(params, spec.n_max, k_cap, std::max(2, spec.grid / 2), base_coarse,
                      nullptr, false, {});
    out.sector_mass = fine;
    out.sector_error.resize(fine.size());
    out.xi = 0.0;
    out.xi_error = 0.0;
    for (std::size_t n = 0; n < fine.size(); ++n) {
        out.sector_error[n] = std::abs(fine[n] - coarse[n]);
        out.xi += fine[n];
        out.xi_error += out.sector_error[n];
    }
    return out;
}

namespace {

double rdmk_value_at_grid(const SimulationParams& params, const QuadratureSpec& spec,
                          int G, const BoxRegion& box0, const ClassicalConfig& x0,
                          const ClassicalConfig& y0, double xi) {
    const int n = static_cast<int>(x0.size());
    const int k_cap = std::min(spec.k_max, params.k_max);
    // Environment bases live in box \ box0.
    const std::vector<Rect> shell = rect_difference(rect_of(params.box), rect_of(box0));
    const PointGrid env_base = union_grid(shell, G);

    // Permutations of {0..n-1}.
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    double value = 0.0;
    for (const std::vector<int>& perm : perms) {
        for (const std::vector<int>& kvec : k_vectors(n, k_cap)) {
            double pref = 1.0;
            std::vector<MemberSpec> pc;
            for (int j = 0; j < n; ++j) {
                MemberSpec m;
                m.k = kvec[static_cast<std::size_t>(j)];
                m.base = singleton(x0.points[static_cast<std::size_t>(j)]);
                m.closes_to_base = false;
                m.end_point = y0.points[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
                m.chi_controls = true;
                pc.push_back(std::move(m));
                pref *= std::pow(params.z, kvec[static_cast<std::size_t>(j)]);
            }
            const std::vector<double> env_masses = sector_masses(
                params, spec.n_max, k_cap, G, env_base, &box0, true, pc);
            double env_total = 0.0;
            for (double m : env_masses) env_total += m;
            value += pref * env_total;
        }
    }
    return value / xi;
}

}  // namespace

KernelQuadrature quad_rdmk(const SimulationParams& params, const QuadratureSpec& spec,
                           const BoxRegion& box0, const ClassicalConfig& x0,
                           const ClassicalConfig& y0) {
    spec.validate(params);
    KernelQuadrature out;
    if (x0.size() != y0.size()) return out;  // exact zero by definition
    if (static_cast<int>(x0.size()) > spec.n_max)
        throw std::invalid_argument("oracle: endpoint cardinality exceeds n_max");
    if (!hardcore_admissible(x0, params.V.core_r()) ||
        !hardcore_admissible(y0, params.V.core_r()))
        throw std::invalid_argument("oracle: inadmissible endpoint configuration");
    if (!box_inside(box0, params.box))
        throw std::invalid_argument("oracle: box0 must lie inside the box");

    const int coarse_grid = std::max(2, spec.grid / 2);
    const PartitionQuadrature xi_fine = quad_partition(params, spec);
    QuadratureSpec spec_coarse = spec;
    spec_coarse.grid = coarse_grid;
    const PartitionQuadrature xi_coarse = quad_partition(params, spec_coarse);

    const double fine =
        rdmk_value_at_grid(params, spec, spec.grid, box0, x0, y0, xi_fine.xi);
    const double coarse =
        rdmk_value_at_grid(params, spec, coarse_grid, box0, x0, y0, xi_coarse.xi);
    out.value = fine;
    out.error = std::abs(fine - coarse);
    return out;
}

double dirichlet_single_particle(const BoxRegion& box, double beta, int k) {
    const double L = box.half_side;
    double axis = 0.0;
    for (int m = 1;; ++m) {
        const double term = std::exp(-k * beta * kPi * kPi * m * m / (8.0 * L * L));
        axis += term;
        if (term < 1e-15 * axis || m > 100000) break;
    }
    return std::pow(axis, box.dim);
}

}  // namespace loopgas
