#include "loopgas/estimators.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace loopgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;

double factorial(long n) {
    double f = 1.0;
    for (long i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}
}  // namespace

OccupancyEstimator::OccupancyEstimator(std::uint64_t source, int n_tracked)
    : n_loops_(source), total_k_(source) {
    counts_.reserve(static_cast<std::size_t>(n_tracked));
    for (int n = 0; n < n_tracked; ++n) counts_.emplace_back(source);
    for (int k = 0; k < 8; ++k) k_counts_.emplace_back(source);
}

void OccupancyEstimator::on_sample(const ChainState& s) {
    const int n = static_cast<int>(s.config.size());
    for (int i = 0; i < static_cast<int>(counts_.size()); ++i)
        counts_[static_cast<std::size_t>(i)].add(n == i ? 1.0 : 0.0);
    n_loops_.add(static_cast<double>(n));
    total_k_.add(static_cast<double>(K_of(s.config)));
    std::vector<double> kc(k_counts_.size(), 0.0);
    for (const Loop& l : s.config.loops)
        if (l.k - 1 < static_cast<int>(kc.size())) kc[static_cast<std::size_t>(l.k - 1)] += 1.0;
    for (std::size_t k = 0; k < k_counts_.size(); ++k) k_counts_[k].add(kc[k]);
}

void OccupancyEstimator::merge(const OccupancyEstimator& o) {
    for (std::size_t i = 0; i < counts_.size() && i < o.counts_.size(); ++i)
        counts_[i].merge(o.counts_[i]);
    n_loops_.merge(o.n_loops_);
    total_k_.merge(o.total_k_);
    for (std::size_t k = 0; k < k_counts_.size() && k < o.k_counts_.size(); ++k)
        k_counts_[k].merge(o.k_counts_[k]);
}

std::int64_t OccupancyEstimator::samples() const { return n_loops_.count(); }

double OccupancyEstimator::p_of(int n) const {
    return counts_[static_cast<std::size_t>(n)].mean();
}

double OccupancyEstimator::p_err(int n) const {
    return counts_[static_cast<std::size_t>(n)].std_error();
}

double OccupancyEstimator::mean_loop_count() const { return n_loops_.mean(); }
double OccupancyEstimator::mean_total_multiplicity() const { return total_k_.mean(); }

std::vector<double> OccupancyEstimator::k_histogram() const {
    std::vector<double> h;
    h.reserve(k_counts_.size());
    for (const Accumulator& a : k_counts_) h.push_back(a.mean());
    return h;
}

std::vector<Accumulator::State> OccupancyEstimator::accumulator_states() const {
    std::vector<Accumulator::State> out;
    for (const Accumulator& a : counts_) out.push_back(a.state());
    out.push_back(n_loops_.state());
    out.push_back(total_k_.state());
    for (const Accumulator& a : k_counts_) out.push_back(a.state());
    return out;
}

void OccupancyEstimator::restore_accumulator_states(
    const std::vector<Accumulator::State>& states, std::size_t& cursor) {
    for (Accumulator& a : counts_) a = Accumulator::from_state(states.at(cursor++));
    n_loops_ = Accumulator::from_state(states.at(cursor++));
    total_k_ = Accumulator::from_state(states.at(cursor++));
    for (Accumulator& a : k_counts_) a = Accumulator::from_state(states.at(cursor++));
}

PartitionEstimate estimate_partition(const OccupancyEstimator& occ) {
    PartitionEstimate e;
    e.p_empty = occ.p_of(0);
    e.p_empty_err = occ.p_err(0);
    if (occ.samples() == 0 || e.p_empty <= 0.0) {
        e.ok = false;
        e.message =
            "no empty-configuration visits: shrink the box or the fugacity so the "
            "empty state has non-negligible probability";
        return e;
    }
    e.ok = true;
    e.xi = 1.0 / e.p_empty;
    e.std_error = e.p_empty_err / (e.p_empty * e.p_empty);
    return e;
}

bool RdmkEstimator::environment_gate(const BoxRegion& box0, const LoopConfiguration& c) {
    for (const Loop& l : c.loops)
        if (box0.contains(l.start())) return false;
    return chi_indicator(box0, c);
}

double RdmkEstimator::inner_value(const SimulationParams& params, const BoxRegion& box0,
                                  const ClassicalConfig& x0, const ClassicalConfig& y0,
                                  const LoopConfiguration& environment,
                                  int n_bridge_draws, RandomStream& rng) {
    const int n = static_cast<int>(x0.size());
    if (n != static_cast<int>(y0.size())) return 0.0;
    if (n == 0) return 1.0;
    if (!hardcore_admissible(x0, params.V.core_r()) ||
        !hardcore_admissible(y0, params.V.core_r()))
        return 0.0;
    const double nfact = factorial(n);
    double acc = 0.0;
    PathCollection pc;
    for (int b = 0; b < n_bridge_draws; ++b) {
        pc.perm = sample_permutation(n, rng);
        pc.paths.clear();
        double w = nfact;
        for (int j = 0; j < n; ++j) {
            const MultiplicityDraw d = sample_multiplicity(params.z, params.beta,
                                                           params.box.dim, params.k_max, rng);
            const Vec& x = x0.points[static_cast<std::size_t>(j)];
            const Vec& y =
                y0.points[static_cast<std::size_t>(pc.perm[static_cast<std::size_t>(j)])];
            w *= d.normalizer * std::exp(-sq_distance(x, y) / (2.0 * d.k * params.beta));
            pc.paths.push_back(sample_bridge(x, y, d.k, params.M, params.beta, rng));
        }
        if (!alpha_indicator(params.box, pc)) continue;
        if (!chi_indicator(box0, pc)) continue;
        const std::span<const Path> members(pc.paths);
        double h = collection_energy(members, params.V, params.beta);
        if (h == kInf) continue;
        const double hx = collections_cross_energy(
            members, std::span<const Path>(environment.loops), params.V, params.beta);
        if (hx == kInf) continue;
        const double hb =
            external_cc_energy(members, params.boundary_cc, params.V, params.beta);
        if (hb == kInf) continue;
        const double hl =
            external_lc_energy(members, params.boundary_lc, params.V, params.beta);
        if (hl == kInf) continue;
        acc += w * std::exp(-(h + hx + hb + hl));
    }
    return acc / n_bridge_draws;
}

RdmkEstimator::RdmkEstimator(const SimulationParams& params, BoxRegion box0,
                             ClassicalConfig x0, ClassicalConfig y0, int n_bridge_draws,
                             std::uint64_t inner_seed, std::uint64_t source)
    : params_(&params),
      box0_(std::move(box0)),
      x0_(std::move(x0)),
      y0_(std::move(y0)),
      n_draws_(n_bridge_draws),
      rng_(inner_seed, 0),
      acc_(source) {
    if (x0_.size() != y0_.size()) {
        exact_zero_ = true;
        return;
    }
    for (const Vec& p : x0_.points)
        if (!box0_.contains(p))
            throw std::domain_error("RdmkEstimator: endpoint outside the inner box");
    for (const Vec& p : y0_.points)
        if (!box0_.contains(p))
            throw std::domain_error("RdmkEstimator: endpoint outside the inner box");
    if (!hardcore_admissible(x0_, params.V.core_r()) ||
        !hardcore_admissible(y0_, params.V.core_r()))
        throw std::domain_error("RdmkEstimator: endpoint config violates the hard core");
    if (static_cast<long>(x0_.size()) > max_occupancy(box0_, params.V.core_r()))
        throw std::domain_error("RdmkEstimator: endpoint config exceeds the occupancy cap");
}

void RdmkEstimator::on_sample(const ChainState& s) {
    if (exact_zero_) return;
    double v = 0.0;
    if (environment_gate(box0_, s.config))
        v = inner_value(*params_, box0_, x0_, y0_, s.config, n_draws_, rng_);
    acc_.add(v);
}

void RdmkEstimator::merge(const RdmkEstimator& o) { acc_.merge(o.acc_); }

KernelEstimate RdmkEstimator::result() const {
    KernelEstimate e;
    e.x0 = x0_;
    e.y0 = y0_;
    if (exact_zero_) return e;  // exact 0 by definition
    e.value = acc_.mean();
    e.std_error = acc_.std_error();
    return e;
}

TraceEstimator::TraceEstimator(const SimulationParams& params, BoxRegion box0,
                               int n_z_draws, int n_bridge_draws,
                               std::uint64_t inner_seed, std::uint64_t source)
    : params_(&params),
      box0_(std::move(box0)),
      n_z_(n_z_draws),
      n_draws_(n_bridge_draws),
      v0_(max_occupancy(box0_, params.V.core_r())),
      rng_(inner_seed, 1),
      acc_(source) {}

void TraceEstimator::on_sample(const ChainState& s) {
    if (!RdmkEstimator::environment_gate(box0_, s.config)) {
        acc_.add(0.0);
        return;
    }
    double sum = 0.0;
    for (int t = 0; t < n_z_; ++t) {
        const ClassicalConfig zc = sample_lebesgue_poisson(box0_, 1.0, rng_);
        if (static_cast<long>(zc.size()) > v0_) continue;  // exact-zero sector
        if (!hardcore_admissible(zc, params_->V.core_r())) continue;
        sum += RdmkEstimator::inner_value(*params_, box0_, zc, zc, s.config, n_draws_,
                                          rng_);
    }
    acc_.add(std::exp(box0_.volume()) * sum / n_z_);
}

void TraceEstimator::merge(const TraceEstimator& o) { acc_.merge(o.acc_); }

CheckRecord TraceEstimator::record() const {
    CheckRecord r;
    r.check = "trace_normalization";
    r.ref = "kernel_trace_equals_one";
    r.source = "mc";
    r.estimate = value();
    r.target = 1.0;
    r.std_error = std_error();
    r.pass = std::abs(r.estimate - 1.0) <= 3.0 * r.std_error;
    return r;
}

MarginalizedKernelEstimator::MarginalizedKernelEstimator(
    const SimulationParams& params, BoxRegion box0, BoxRegion box1, ClassicalConfig x1,
    ClassicalConfig y1, int n_z_draws, int n_bridge_draws, std::uint64_t inner_seed,
    std::uint64_t source)
    : params_(&params),
      box0_(std::move(box0)),
      box1_(std::move(box1)),
      x1_(std::move(x1)),
      y1_(std::move(y1)),
      n_z_(n_z_draws),
      n_draws_(n_bridge_draws),
      v0_(max_occupancy(box0_, params.V.core_r())),
      rng_(inner_seed, 2),
      acc_(source) {
    if (!box_inside(box1_, box0_))
        throw std::domain_error("MarginalizedKernelEstimator: box1 must lie inside box0");
}

void MarginalizedKernelEstimator::on_sample(const ChainState& s) {
    if (!RdmkEstimator::environment_gate(box0_, s.config)) {
        acc_.add(0.0);
        return;
    }
    const double shell_vol = box0_.volume() - box1_.volume();
    double sum = 0.0;
    for (int t = 0; t < n_z_; ++t) {
        // Poisson(shell volume) points, uniform on box0 \ box1 by rejection.
        const int nz = rng_.poisson(shell_vol);
        ClassicalConfig xz = x1_, yz = y1_;
        for (int i = 0; i < nz; ++i) {
            Vec p(static_cast<std::size_t>(box0_.dim));
            do {
                for (int c = 0; c < box0_.dim; ++c)
                    p[static_cast<std::size_t>(c)] = rng_.uniform(
                        box0_.center[static_cast<std::size_t>(c)] - box0_.half_side,
                        box0_.center[static_cast<std::size_t>(c)] + box0_.half_side);
            } while (box1_.contains(p));
            xz.points.push_back(p);
            yz.points.push_back(std::move(p));
        }
        if (static_cast<long>(xz.size()) > v0_) continue;
        if (!hardcore_admissible(xz, params_->V.core_r()) ||
            !hardcore_admissible(yz, params_->V.core_r()))
            continue;
        sum += RdmkEstimator::inner_value(*params_, box0_, xz, yz, s.config, n_draws_,
                                          rng_);
    }
    acc_.add(std::exp(shell_vol) * sum / n_z_);
}

void MarginalizedKernelEstimator::merge(const MarginalizedKernelEstimator& o) {
    acc_.merge(o.acc_);
}

KernelEstimate MarginalizedKernelEstimator::result() const {
    KernelEstimate e;
    e.x0 = x1_;
    e.y0 = y1_;
    e.value = acc_.mean();
    e.std_error = acc_.std_error();
    return e;
}

RuelleValidator::RuelleValidator(const SimulationParams& params,
                                 std::vector<Loop> test_loops, std::uint64_t source)
    : params_(&params), test_loops_(std::move(test_loops)) {
    for (const Loop& l : test_loops_) {
        if (l.M != params.M)
            throw std::invalid_argument("RuelleValidator: test loop M mismatch");
        if (!l.closed())
            throw std::invalid_argument("RuelleValidator: test loop not closed");
    }
    consts_ = constants(params.V, params.z, params.beta, params.box.dim);
    for (std::size_t i = 0; i < test_loops_.size(); ++i) acc_.emplace_back(source);
}

void RuelleValidator::on_sample(const ChainState& s) {
    for (std::size_t i = 0; i < test_loops_.size(); ++i) {
        const double h = loop_conditional_energy(test_loops_[i], s.config, -1, *params_);
        acc_[i].add(h == kInf ? 0.0 : std::exp(-h));
    }
}

void RuelleValidator::merge(const RuelleValidator& o) {
    for (std::size_t i = 0; i < acc_.size() && i < o.acc_.size(); ++i)
        acc_[i].merge(o.acc_[i]);
}

std::vector<CheckRecord> RuelleValidator::records() const {
    std::vector<CheckRecord> out;
    for (std::size_t i = 0; i < test_loops_.size(); ++i) {
        const int k = test_loops_[i].k;
        const double scale = std::pow(params_->z, k) / k;
        CheckRecord r;
        r.check = "ruelle_bound";
        r.ref = "moment_function_geometric_bound";
        r.source = "mc";
        r.estimate = scale * acc_[i].mean();
        r.std_error = scale * acc_[i].std_error();
        r.target = std::pow(consts_.rho_bar, k) / k;
        r.pass = r.estimate <= r.target + 2.0 * r.std_error;
        std::ostringstream os;
        os << "test loop " << i << " k=" << k;
        r.details = os.str();
        out.push_back(std::move(r));
    }
    return out;
}

DensityProfileEstimator::DensityProfileEstimator(const SimulationParams& params,
                                                 BoxRegion region, double cell_side,
                                                 std::uint64_t source)
    : params_(&params), region_(std::move(region)), cell_side_(cell_side) {
    cells_per_axis_ = std::max(1, static_cast<int>(std::round(region_.side() / cell_side)));
    cell_side_ = region_.side() / cells_per_axis_;
    int n_cells = 1;
    for (int c = 0; c < region_.dim; ++c) n_cells *= cells_per_axis_;
    for (int i = 0; i < n_cells; ++i) cell_counts_.emplace_back(source);
    direct_count_ = Accumulator(source);
}

double DensityProfileEstimator::cell_volume() const {
    return std::pow(cell_side_, region_.dim);
}

int DensityProfileEstimator::cell_index(std::span<const double> p) const {
    int idx = 0;
    for (int c = 0; c < region_.dim; ++c) {
        const double lo = region_.center[static_cast<std::size_t>(c)] - region_.half_side;
        const double u = (p[static_cast<std::size_t>(c)] - lo) / cell_side_;
        if (u < 0.0 || u >= cells_per_axis_) return -1;
        idx = idx * cells_per_axis_ + static_cast<int>(u);
    }
    return idx;
}

void DensityProfileEstimator::on_sample(const ChainState& s) {
    std::vector<double> counts(cell_counts_.size(), 0.0);
    double inside = 0.0;
    for (const Loop& l : s.config.loops) {
        const int idx = cell_index(l.start());
        if (idx >= 0) {
            counts[static_cast<std::size_t>(idx)] += 1.0;
            inside += 1.0;
        }
    }
    for (std::size_t i = 0; i < counts.size(); ++i) cell_counts_[i].add(counts[i]);
    direct_count_.add(inside);
}

void DensityProfileEstimator::merge(const DensityProfileEstimator& o) {
    for (std::size_t i = 0; i < cell_counts_.size() && i < o.cell_counts_.size(); ++i)
        cell_counts_[i].merge(o.cell_counts_[i]);
    direct_count_.merge(o.direct_count_);
}

double DensityProfileEstimator::density(int cell) const {
    return cell_counts_[static_cast<std::size_t>(cell)].mean() / cell_volume();
}

double DensityProfileEstimator::density_err(int cell) const {
    return cell_counts_[static_cast<std::size_t>(cell)].std_error() / cell_volume();
}

double DensityProfileEstimator::integrated_count() const {
    double s = 0.0;
    for (const Accumulator& a : cell_counts_) s += a.mean();
    return s;
}

double DensityProfileEstimator::direct_mean_count() const { return direct_count_.mean(); }
double DensityProfileEstimator::direct_mean_count_err() const {
    return direct_count_.std_error();
}

std::vector<Accumulator::State> DensityProfileEstimator::accumulator_states() const {
    std::vector<Accumulator::State> out;
    for (const Accumulator& a : cell_counts_) out.push_back(a.state());
    out.push_back(direct_count_.state());
    return out;
}

void DensityProfileEstimator::restore_accumulator_states(
    const std::vector<Accumulator::State>& states, std::size_t& cursor) {
    for (Accumulator& a : cell_counts_) a = Accumulator::from_state(states.at(cursor++));
    direct_count_ = Accumulator::from_state(states.at(cursor++));
}

BoundConstants bound_constants(const SimulationParams& params) {
    BoundConstants b;
    const PotentialConstants c = constants(params.V, params.z, params.beta, params.box.dim);
    const double rr = std::pow(params.V.range_R() / params.V.core_r(), params.box.dim);
    b.q_coeff = std::exp(params.beta * c.v_bar * rr);
    const BoxRegion& cap_box = params.inner_box ? *params.inner_box : params.box;
    b.v0 = max_occupancy(cap_box, params.V.core_r());
    b.convergent = c.stable;
    if (!c.stable) {
        b.kernel_bound = kInf;
        b.gradient_bound = kInf;
        return b;
    }
    const int d = params.box.dim;
    const double beta = params.beta;
    auto series = [&](auto term) {
        double s = 0.0;
        for (int k = 1;; ++k) {
            const double t = std::pow(c.rho_bar, k) * term(k);
            s += t;
            if (t < 1e-15 * s || k > 100000) break;
        }
        return s;
    };
    const double S1 = series([&](int k) { return std::pow(kTwoPi * beta * k, -0.5 * d); });
    const double S2 =
        series([&](int k) { return std::pow(kTwoPi * beta * k, -(1.0 + 0.5 * d)); });
    const double S3 = series([&](int k) {
        return std::pow(beta * k, 1.0 - 0.5 * d) * std::pow(kTwoPi, -0.5 * d);
    });
    const double v0f = factorial(b.v0);
    const double core = v0f * std::pow(std::max(1.0, S1), static_cast<double>(b.v0));
    b.kernel_bound = core;
    const double L0 = cap_box.half_side;
    b.gradient_bound =
        2.0 * std::sqrt(static_cast<double>(d)) * L0 * core * S2 +
        c.v_bar1 * v0f * beta * rr *
            std::pow(std::max(1.0, S1), static_cast<double>(b.v0)) * S3;
    return b;
}

double q_bound(const BoundConstants& b, long K) {
    return std::pow(b.q_coeff, static_cast<double>(K));
}

std::vector<CheckRecord> validate_kernel_bounds(
    const std::vector<KernelEstimate>& kernels, const BoundConstants& bounds) {
    std::vector<CheckRecord> out;
    int i = 0;
    for (const KernelEstimate& k : kernels) {
        CheckRecord r;
        r.check = "kernel_bound";
        r.ref = "uniform_kernel_bound";
        r.source = "mc";
        r.estimate = std::abs(k.value);
        r.target = bounds.kernel_bound;
        r.std_error = k.std_error;
        r.pass = r.estimate <= bounds.kernel_bound + 2.0 * k.std_error;
        std::ostringstream os;
        os << "kernel " << i++ << " n=" << k.x0.size();
        r.details = os.str();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace loopgas
