#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "loopgas/energy.hpp"
#include "loopgas/geometry.hpp"
#include "loopgas/loops.hpp"
#include "loopgas/potential.hpp"
#include "loopgas/sampling.hpp"

namespace loopgas {

struct MoveWeights {
    double insert = 0.3;
    double remove = 0.3;
    double wiggle = 0.3;
    double rek = 0.1;

    double total() const { return insert + remove + wiggle + rek; }
};

struct SimulationParams {
    BoxRegion box;                      // Lambda
    std::optional<BoxRegion> inner_box; // Lambda_0, for kernel estimation
    double z = 0.0;
    double beta = 0.0;
    PotentialModel V;
    int M = 8;
    int k_max = 1;
    ClassicalConfig boundary_cc;        // quenched external CC over Lambda^c
    LoopConfiguration boundary_lc;      // boundary loops over a truncation shell
    std::optional<BoxRegion> truncation_box;
    MoveWeights moves;
    std::int64_t sweeps = 0;            // recorded MC steps after burn-in
    std::int64_t burn_in = 0;
    std::int64_t thinning = 1;
    std::uint64_t seed = 0;
    int n_chains = 1;
    std::int64_t checkpoint_interval = 0;  // steps; 0 disables

    void validate() const;  // throws std::invalid_argument
};

/// Current chain state with incrementally maintained weight components.
/// cached_energy is the finite total h(config | boundary); K and log L
/// are tracked exactly.
struct ChainState {
    LoopConfiguration config;
    double cached_energy = 0.0;
    long cached_K = 0;
    double cached_logL = 0.0;
    std::int64_t step = 0;
    RandomStream rng;
};

ChainState make_initial_state(const SimulationParams& params, std::uint64_t stream_id);

/// log of the unnormalized density alpha z^K / L exp(-h) with respect to
/// the reference loop measure; -inf encodes alpha = 0 or a core violation.
double log_weight(const ChainState& state, const SimulationParams& params);

/// Total h(config | boundary): internal + external terms (+inf on any
/// core violation).
double state_energy(const LoopConfiguration& config, const SimulationParams& params);

/// Conditional energy of one loop against the rest of the configuration
/// and the boundary data: self + cross-to-others + cross-to-boundary.
double loop_conditional_energy(const Loop& l, const LoopConfiguration& config,
                               int exclude_index, const SimulationParams& params);

enum class MoveKind { insert, remove, wiggle, rek };

/// A fully evaluated proposal.  log_T_ratio is log[T(S'->S) / T(S->S')];
/// the Metropolis log acceptance ratio is log_T_ratio plus the target
/// log-weight difference (delta_K log z - delta_logL - delta_energy, or
/// -inf when the proposal violates confinement or the core).
struct MoveProposal {
    MoveKind kind = MoveKind::insert;
    bool valid = false;      // a no-op move (e.g. remove from empty) if false
    bool hard_reject = false;
    int target_index = -1;
    Loop new_loop;
    int window_a = -1, window_b = -1;  // wiggle only
    double log_T_ratio = 0.0;
    double delta_energy = 0.0;
    long delta_K = 0;
    double delta_logL = 0.0;
};

/// Metropolis log acceptance ratio of a proposal (-inf on hard reject).
double log_acceptance(const MoveProposal& p, const SimulationParams& params);

/// Deterministic evaluation given the would-be draw; used by the
/// samplers below and directly by balance tests.
MoveProposal eval_insert(const ChainState& s, const SimulationParams& params,
                         Loop proposed);
MoveProposal eval_remove(const ChainState& s, const SimulationParams& params,
                         int index);
MoveProposal eval_wiggle(const ChainState& s, const SimulationParams& params,
                         int index, Loop replacement, int a, int b);
MoveProposal eval_rek(const ChainState& s, const SimulationParams& params, int index,
                      Loop replacement);

MoveProposal propose_insert(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng);
MoveProposal propose_remove(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng);
MoveProposal propose_wiggle(const ChainState& s, const SimulationParams& params,
                            RandomStream& rng);
MoveProposal propose_rek(const ChainState& s, const SimulationParams& params,
                         RandomStream& rng);

/// One Metropolis-Hastings step: pick a move kind by weight, propose,
/// accept/reject, update cached components incrementally.
/// Returns true when the proposal was accepted.
bool mh_step(ChainState& s, const SimulationParams& params);

/// From-scratch recomputation check of the cached components
/// (throws std::logic_error on desync beyond tolerance).
void verify_cache(const ChainState& s, const SimulationParams& params,
                  double tol = 1e-8);

/// Independent legality verifier: confinement, hard core against the
/// full environment, occupancy cap.
bool state_legal(const ChainState& s, const SimulationParams& params);

struct ChainCallbacks {
    std::function<void(const ChainState&)> on_sample;
    std::function<void(const ChainState&)> on_checkpoint;
};

/// Drives burn-in + sweeps steps of one chain; thinned post-burn-in
/// states go to on_sample, checkpoints fire every checkpoint_interval
/// steps.  Fully deterministic given the state's stream.
void run_chain(ChainState& s, const SimulationParams& params,
               const ChainCallbacks& callbacks);

}  // namespace loopgas
