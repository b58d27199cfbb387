#pragma once

#include <string>
#include <vector>

#include "loopgas/accumulator.hpp"
#include "loopgas/mcmc.hpp"

namespace loopgas {

/// Versioned per-chain checkpoint: parameter hash, step counter, exact
/// RNG state, the serialized loop configuration and the chain's
/// accumulator states.  Runs resume bit-exactly.
struct ChainCheckpoint {
    std::string params_hash;
    std::uint64_t stream = 0;
    ChainState state;
    std::vector<Accumulator::State> accumulators;
};

std::string render_checkpoint(const ChainCheckpoint& cp, double beta);
ChainCheckpoint parse_checkpoint(const std::string& text, int dim, int M);

void save_checkpoint(const std::string& path, const ChainCheckpoint& cp, double beta);
ChainCheckpoint load_checkpoint(const std::string& path, int dim, int M);

}  // namespace loopgas
