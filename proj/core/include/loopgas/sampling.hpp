#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "loopgas/geometry.hpp"
#include "loopgas/loops.hpp"

namespace loopgas {

/// Seedable, splittable random stream (xoshiro256++ core).  Identical
/// (seed, stream) reproduce the identical draw sequence; distinct stream
/// ids give statistically independent streams.  The full state is four
/// 64-bit words, so streams checkpoint and resume bit-exactly.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0) {}
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller, no cached spare).
    double normal();
    /// Uniform integer in {0, .., n-1}, unbiased.
    int uniform_int(int n);
    /// Poisson with the given mean (inversion by multiplication).
    int poisson(double mean);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::array<std::uint64_t, 4> state() const { return s_; }
    void set_state(const std::array<std::uint64_t, 4>& s) { s_ = s; }

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_ = 0, stream_ = 0;
};

/// Total mass of the Wiener bridge measure of time-length k*beta:
/// (2 pi k beta)^(-d/2) exp(-|x-y|^2 / (2 k beta)).
double bridge_mass(std::span<const double> x, std::span<const double> y, int k,
                   double beta, int dim);

/// Same with |x-y| = 0 (the loop case).
double closed_bridge_mass(int k, double beta, int dim);

/// Sample the discretized Brownian bridge from x to y over total time
/// k*beta with k*M steps of beta/M, by recursive midpoint bisection.
/// Conditional on the endpoints, interior positions follow the exact
/// bridge law on the slice grid.
Path sample_bridge(const Vec& x, const Vec& y, int k, int M, double beta,
                   RandomStream& rng);

/// Resample interior slices of p strictly between indices a and b
/// (positions at a and b held fixed) from the conditional bridge law.
void resample_bridge_window(Path& p, int a, int b, double beta, RandomStream& rng);

/// Multiplicity draw for the truncated loop sum-measure: P(k) is
/// proportional to z^k (2 pi k beta)^(-d/2) for k <= k_max.
/// `normalizer` is S = sum_{k<=k_max} z^k (2 pi k beta)^(-d/2), so that
/// importance-weighted integrals against the sum-measure are unbiased.
struct MultiplicityDraw {
    int k = 1;
    double normalizer = 0.0;
};
MultiplicityDraw sample_multiplicity(double z, double beta, int dim, int k_max,
                                     RandomStream& rng);
/// The normalizer alone.
double multiplicity_normalizer(double z, double beta, int dim, int k_max);
/// Geometric tail bound on the neglected k > k_max mass, using rho_bar.
double multiplicity_tail_bound(double rho_bar, double beta, int dim, int k_max);

/// Poisson(intensity * volume) points, each uniform in the box.
ClassicalConfig sample_lebesgue_poisson(const BoxRegion& box, double intensity,
                                        RandomStream& rng);

/// Uniform permutation of {0..n-1} (Fisher-Yates).
std::vector<int> sample_permutation(int n, RandomStream& rng);

/// Log density of the full Gaussian increment chain of a path:
/// sum_j log phi_{beta/M}(pos(j+1) - pos(j)).
double log_gauss_chain(const Path& p, double beta);

/// Log density of the interior of the window (a, b) conditional on the
/// window endpoints: sum of step densities minus the direct-hop density.
double log_bridge_window_density(const Path& p, int a, int b, double beta);

}  // namespace loopgas
