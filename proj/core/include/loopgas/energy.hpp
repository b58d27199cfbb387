#pragma once

#include <span>

#include "loopgas/geometry.hpp"
#include "loopgas/loops.hpp"
#include "loopgas/potential.hpp"

namespace loopgas {

/// Time integrals use the left-Riemann sum on the slice grid: nodes
/// j = 0..M-1 with weight beta/M.  The hard core is enforced on the full
/// closed interval (slices j = 0..M), so an energy is +inf exactly when
/// some section violates the core.  +inf short-circuits accumulation;
/// no -inf can arise (the profile is finite on [r, R]).

/// Self energy of one path: interactions between its own period copies.
/// Zero for k = 1.
double path_self_energy(const Path& p, const PotentialModel& V, double beta);

/// Interaction energy between two paths (all ordered copy pairs, no 1/2).
double path_pair_energy(const Path& p, const Path& q, const PotentialModel& V,
                        double beta);

/// Sum of member self energies plus pair energies over unordered
/// distinct member pairs.
double collection_energy(std::span<const Path> members, const PotentialModel& V,
                         double beta);
double collection_energy(const LoopConfiguration& c, const PotentialModel& V,
                         double beta);
double collection_energy(const PathCollection& c, const PotentialModel& V,
                         double beta);

/// Cross term between two collections (the sliced integral of the
/// section cross energies).
double collections_cross_energy(std::span<const Path> a, std::span<const Path> b,
                                const PotentialModel& V, double beta);

/// h(pc v lc) = h(pc) + h(lc) + cross(pc, lc).
double combined_energy(const PathCollection& pc, const LoopConfiguration& lc,
                       const PotentialModel& V, double beta);

/// Sliced integral of the cross energy between member sections and a
/// static external configuration.
double external_cc_energy(std::span<const Path> members, const ClassicalConfig& ext,
                          const PotentialModel& V, double beta);

/// Cross energy against a boundary loop configuration (exact for finite
/// boundary collections: only loops within reach R of the member slices
/// contribute).
double external_lc_energy(std::span<const Path> members,
                          const LoopConfiguration& boundary,
                          const PotentialModel& V, double beta);

/// The assertion floor -beta v_bar (R/r)^d K for finite energies of a
/// collection with total multiplicity K against hardcore-admissible
/// environments.
double energy_lower_bound(long K, const PotentialConstants& consts, double beta,
                          double core_r, double range_R, int dim);

struct EnergyBreakdown {
    double self = 0.0;
    double internal_pairs = 0.0;
    double external = 0.0;
    double total = 0.0;
};

/// Per-part decomposition of h(c | ext cc) for one collection.
EnergyBreakdown energy_breakdown(std::span<const Path> members,
                                 const ClassicalConfig& ext,
                                 const PotentialModel& V, double beta);

/// Classical pair sum over a flat point set (dim-major layout) with +inf
/// on core violations.  Uses a cell grid of cell size R above the given
/// point-count threshold, direct pair enumeration below it; both paths
/// produce the identical neighbor set.
double classical_pair_sum(std::span<const double> pts, int dim,
                          const PotentialModel& V, int grid_threshold = 48);

}  // namespace loopgas
