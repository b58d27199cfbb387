#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopgas/accumulator.hpp"
#include "loopgas/mcmc.hpp"
#include "loopgas/report.hpp"

namespace loopgas {

/// Histogram of the loop count, folded over chain samples.  Feeds the
/// partition-function estimate (Xi = 1 / empty-state frequency) and the
/// occupancy probabilities P(N = n).
class OccupancyEstimator {
public:
    OccupancyEstimator(std::uint64_t source = 0, int n_tracked = 8);
    void on_sample(const ChainState& s);
    void merge(const OccupancyEstimator& o);

    std::int64_t samples() const;
    /// P(N = n) with batch-means error.
    double p_of(int n) const;
    double p_err(int n) const;
    double mean_loop_count() const;
    double mean_total_multiplicity() const;
    /// Multiplicity histogram fractions (index k-1), diagnostics.
    std::vector<double> k_histogram() const;

    const Accumulator& indicator(int n) const { return counts_[static_cast<std::size_t>(n)]; }

    // Checkpoint support: fixed-order accumulator states.
    std::vector<Accumulator::State> accumulator_states() const;
    void restore_accumulator_states(const std::vector<Accumulator::State>& states,
                                    std::size_t& cursor);

private:
    std::vector<Accumulator> counts_;  // indicator of N == n
    Accumulator n_loops_;
    Accumulator total_k_;
    std::vector<Accumulator> k_counts_;
};

struct PartitionEstimate {
    bool ok = false;
    double xi = 0.0;
    double std_error = 0.0;
    double p_empty = 0.0;
    double p_empty_err = 0.0;
    std::string message;
};

/// Xi from the empty-configuration frequency; errors via the delta method.
PartitionEstimate estimate_partition(const OccupancyEstimator& occ);

struct KernelEstimate {
    ClassicalConfig x0, y0;
    double value = 0.0;
    double std_error = 0.0;
};

/// Two-level Monte Carlo estimator of the reduced density matrix kernel
/// over the inner box: the outer level folds chain samples (restricted to
/// their part outside the inner box with the matching indicators), the
/// inner level draws endpoint-permuted bridge collections by importance
/// sampling against the truncated multiplicity sum-measure.
class RdmkEstimator {
public:
    /// Endpoint configs must be hardcore-admissible subsets of box0 with
    /// equal cardinality (a mismatch yields the exact-zero kernel).
    RdmkEstimator(const SimulationParams& params, BoxRegion box0,
                  ClassicalConfig x0, ClassicalConfig y0, int n_bridge_draws,
                  std::uint64_t inner_seed, std::uint64_t source = 0);

    void on_sample(const ChainState& s);
    void merge(const RdmkEstimator& o);
    KernelEstimate result() const;

    /// One inner evaluation against a fixed environment; used by the outer
    /// fold and by the trace/compatibility integrators.
    static double inner_value(const SimulationParams& params, const BoxRegion& box0,
                              const ClassicalConfig& x0, const ClassicalConfig& y0,
                              const LoopConfiguration& environment,
                              int n_bridge_draws, RandomStream& rng);

    /// The outer gate of the chain sample: no loop based inside box0 and
    /// no control point of a multi-period loop inside box0.
    static bool environment_gate(const BoxRegion& box0, const LoopConfiguration& c);

private:
    const SimulationParams* params_;
    BoxRegion box0_;
    ClassicalConfig x0_, y0_;
    int n_draws_;
    bool exact_zero_ = false;
    RandomStream rng_;
    Accumulator acc_;
};

/// Monte Carlo Lebesgue-Poisson integral of F(z, z) over configurations
/// in box0 (the trace of the kernel); the target value is 1.
class TraceEstimator {
public:
    TraceEstimator(const SimulationParams& params, BoxRegion box0, int n_z_draws,
                   int n_bridge_draws, std::uint64_t inner_seed,
                   std::uint64_t source = 0);
    void on_sample(const ChainState& s);
    void merge(const TraceEstimator& o);
    double value() const { return acc_.mean(); }
    double std_error() const { return acc_.std_error(); }
    CheckRecord record() const;

private:
    const SimulationParams* params_;
    BoxRegion box0_;
    int n_z_, n_draws_;
    long v0_;
    RandomStream rng_;
    Accumulator acc_;
};

/// Marginalization side of the kernel compatibility identity: integrates
/// F^{box0}(x1 v z, y1 v z) over configurations z in box0 \ box1.
class MarginalizedKernelEstimator {
public:
    MarginalizedKernelEstimator(const SimulationParams& params, BoxRegion box0,
                                BoxRegion box1, ClassicalConfig x1,
                                ClassicalConfig y1, int n_z_draws,
                                int n_bridge_draws, std::uint64_t inner_seed,
                                std::uint64_t source = 0);
    void on_sample(const ChainState& s);
    void merge(const MarginalizedKernelEstimator& o);
    KernelEstimate result() const;

private:
    const SimulationParams* params_;
    BoxRegion box0_, box1_;
    ClassicalConfig x1_, y1_;
    int n_z_, n_draws_;
    long v0_;
    RandomStream rng_;
    Accumulator acc_;
};

/// Moment-function estimates for fixed singleton test loops, checked
/// against the geometric bound rho_bar^K / L.
class RuelleValidator {
public:
    RuelleValidator(const SimulationParams& params, std::vector<Loop> test_loops,
                    std::uint64_t source = 0);
    void on_sample(const ChainState& s);
    void merge(const RuelleValidator& o);
    std::vector<CheckRecord> records() const;

private:
    const SimulationParams* params_;
    std::vector<Loop> test_loops_;
    std::vector<Accumulator> acc_;
    PotentialConstants consts_;
};

/// Base-point density over a cell grid, with a same-run sum-rule
/// cross-check against the direct loop count.
class DensityProfileEstimator {
public:
    DensityProfileEstimator(const SimulationParams& params, BoxRegion region,
                            double cell_side, std::uint64_t source = 0);
    void on_sample(const ChainState& s);
    void merge(const DensityProfileEstimator& o);

    int cells_per_axis() const { return cells_per_axis_; }
    double cell_volume() const;
    /// Density estimate and error for a flat cell index.
    double density(int cell) const;
    double density_err(int cell) const;
    int cell_index(std::span<const double> p) const;  // -1 if outside
    int n_cells() const { return static_cast<int>(cell_counts_.size()); }
    /// Sum over cells of density * cell volume (should match the mean
    /// loop count over the region).
    double integrated_count() const;
    double direct_mean_count() const;
    double direct_mean_count_err() const;

    std::vector<Accumulator::State> accumulator_states() const;
    void restore_accumulator_states(const std::vector<Accumulator::State>& states,
                                    std::size_t& cursor);

private:
    const SimulationParams* params_;
    BoxRegion region_;
    double cell_side_;
    int cells_per_axis_;
    std::vector<Accumulator> cell_counts_;
    Accumulator direct_count_;
};

/// Numeric right-hand sides of the uniform kernel bounds.
struct BoundConstants {
    /// q_bound(K) = q_coeff^K, the environment-integral bound per unit
    /// of total multiplicity.
    double q_coeff = 1.0;
    double kernel_bound = 0.0;
    double gradient_bound = 0.0;
    bool convergent = false;  // rho_bar < 1; bounds are +inf otherwise
    long v0 = 0;
};

/// Series evaluated to 1e-15 relative truncation; requires the inner box
/// (or the box itself) for the occupancy cap v0.
BoundConstants bound_constants(const SimulationParams& params);

double q_bound(const BoundConstants& b, long K);

/// Asserts |F| <= kernel_bound + 2 stderr for every estimate.
std::vector<CheckRecord> validate_kernel_bounds(
    const std::vector<KernelEstimate>& kernels, const BoundConstants& bounds);

}  // namespace loopgas
