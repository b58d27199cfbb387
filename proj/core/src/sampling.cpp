#include "loopgas/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopgas {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int s) {
    return (x << s) | (x >> (64 - s));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    for (auto& w : s_) w = splitmix64(x);
    // All-zero state is invalid for xoshiro; splitmix cannot produce it for
    // four consecutive draws, but guard anyway.
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

int RandomStream::uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return static_cast<int>(v % un);
}

int RandomStream::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    const double L = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > L);
    return k - 1;
}

double bridge_mass(std::span<const double> x, std::span<const double> y, int k,
                   double beta, int dim) {
    const double T = k * beta;
    return std::pow(kTwoPi * T, -0.5 * dim) * std::exp(-sq_distance(x, y) / (2.0 * T));
}

double closed_bridge_mass(int k, double beta, int dim) {
    return std::pow(kTwoPi * k * beta, -0.5 * dim);
}

namespace {

// Fill interior positions between slice indices a < b by recursive
// midpoint bisection; the endpoints at a and b are already set.  The
// recursion order is fixed, so draws are reproducible.
void bisect_fill(Path& p, int a, int b, double dt, RandomStream& rng) {
    if (b - a < 2) return;
    const int m = (a + b) / 2;
    const double ta = a * dt, tb = b * dt, tm = m * dt;
    const double f = (tm - ta) / (tb - ta);
    const double sd = std::sqrt((tm - ta) * (tb - tm) / (tb - ta));
    auto pa = p.at(a);
    auto pb = p.at(b);
    auto pm = p.at(m);
    for (int c = 0; c < p.dim; ++c)
        pm[c] = pa[c] + f * (pb[c] - pa[c]) + sd * rng.normal();
    bisect_fill(p, a, m, dt, rng);
    bisect_fill(p, m, b, dt, rng);
}

}  // namespace

Path sample_bridge(const Vec& x, const Vec& y, int k, int M, double beta,
                   RandomStream& rng) {
    Path p = Path::with_endpoints(x, y, k, M);
    bisect_fill(p, 0, p.n_slices(), beta / M, rng);
    return p;
}

void resample_bridge_window(Path& p, int a, int b, double beta, RandomStream& rng) {
    if (a < 0 || b > p.n_slices() || b - a < 2)
        throw std::invalid_argument("resample_bridge_window: bad window");
    bisect_fill(p, a, b, beta / p.M, rng);
}

double multiplicity_normalizer(double z, double beta, int dim, int k_max) {
    double S = 0.0;
    for (int k = 1; k <= k_max; ++k)
        S += std::pow(z, k) * closed_bridge_mass(k, beta, dim);
    return S;
}

MultiplicityDraw sample_multiplicity(double z, double beta, int dim, int k_max,
                                     RandomStream& rng) {
    if (k_max < 1) throw std::invalid_argument("sample_multiplicity: k_max >= 1");
    MultiplicityDraw d;
    d.normalizer = multiplicity_normalizer(z, beta, dim, k_max);
    if (!(d.normalizer > 0.0))
        throw std::invalid_argument("sample_multiplicity: zero total mass");
    if (k_max == 1) {
        d.k = 1;
        return d;
    }
    const double u = rng.uniform() * d.normalizer;
    double acc = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        acc += std::pow(z, k) * closed_bridge_mass(k, beta, dim);
        if (u < acc || k == k_max) {
            d.k = k;
            return d;
        }
    }
    d.k = k_max;
    return d;
}

double multiplicity_tail_bound(double rho_bar, double beta, int dim, int k_max) {
    if (rho_bar >= 1.0) return std::numeric_limits<double>::infinity();
    return closed_bridge_mass(k_max + 1, beta, dim) * std::pow(rho_bar, k_max + 1) /
           (1.0 - rho_bar);
}

ClassicalConfig sample_lebesgue_poisson(const BoxRegion& box, double intensity,
                                        RandomStream& rng) {
    const int n = rng.poisson(intensity * box.volume());
    ClassicalConfig cc;
    cc.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec p(static_cast<std::size_t>(box.dim));
        for (int c = 0; c < box.dim; ++c)
            p[static_cast<std::size_t>(c)] =
                rng.uniform(box.center[static_cast<std::size_t>(c)] - box.half_side,
                            box.center[static_cast<std::size_t>(c)] + box.half_side);
        cc.points.push_back(std::move(p));
    }
    return cc;
}

std::vector<int> sample_permutation(int n, RandomStream& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    return perm;
}

namespace {

double log_step_density(std::span<const double> a, std::span<const double> b,
                        double tau, int dim) {
    return -0.5 * dim * std::log(kTwoPi * tau) - sq_distance(a, b) / (2.0 * tau);
}

}  // namespace

double log_gauss_chain(const Path& p, double beta) {
    const double dt = beta / p.M;
    double s = 0.0;
    for (int j = 0; j < p.n_slices(); ++j)
        s += log_step_density(p.at(j), p.at(j + 1), dt, p.dim);
    return s;
}

double log_bridge_window_density(const Path& p, int a, int b, double beta) {
    const double dt = beta / p.M;
    double s = 0.0;
    for (int j = a; j < b; ++j)
        s += log_step_density(p.at(j), p.at(j + 1), dt, p.dim);
    s -= log_step_density(p.at(a), p.at(b), (b - a) * dt, p.dim);
    return s;
}

}  // namespace loopgas
