#pragma once

#include <vector>

#include "loopgas/geometry.hpp"
#include "loopgas/mcmc.hpp"

namespace loopgas {

/// Deterministic brute-force evaluation of the loop-gas integrals for
/// tiny systems, by tensor-product Gauss-Legendre quadrature contracted
/// slice by slice.  The left-Riemann discretization makes the integrand
/// a product of per-slice factors, so the tensor sum is evaluated
/// exactly by a transfer recursion over slice states.
///
/// Hard caps: n_max <= 2 loops per sector, multiplicities <= 2, M <= 4,
/// <= 16 grid points per axis.  The operation budget is checked before
/// execution and exceeding it raises an error.
struct QuadratureSpec {
    int n_max = 2;   // truncation of the loop-number expansion
    int k_max = 2;   // multiplicity cap (the chain's own cap also applies)
    int M = 2;       // slices per period; must match the simulation's M
    int grid = 12;   // Gauss-Legendre points per axis

    void validate(const SimulationParams& params) const;
};

struct PartitionQuadrature {
    double xi = 1.0;
    double xi_error = 0.0;
    /// z-weighted sector masses: sector_mass[n] = z^.. integral of the
    /// n-loop term, so xi = sum over n and P(N = n) = sector_mass[n]/xi.
    std::vector<double> sector_mass;
    std::vector<double> sector_error;
};

/// The grand-canonical normalizer of the discretized target, truncated
/// at n_max loops.  Errors are grid-refinement differences (grid vs
/// grid/2).
PartitionQuadrature quad_partition(const SimulationParams& params,
                                   const QuadratureSpec& spec);

struct KernelQuadrature {
    double value = 0.0;
    double error = 0.0;
};

/// The reduced density matrix kernel F(x0, y0) over box0, by quadrature
/// over endpoint-permuted bridge collections and the truncated
/// environment expansion.
KernelQuadrature quad_rdmk(const SimulationParams& params, const QuadratureSpec& spec,
                           const BoxRegion& box0, const ClassicalConfig& x0,
                           const ClassicalConfig& y0);

/// Dirichlet heat trace of the free particle in the box:
/// [sum_m exp(-k beta pi^2 m^2 / (8 L^2))]^d, truncated at 1e-15 relative.
double dirichlet_single_particle(const BoxRegion& box, double beta, int k);

/// Gauss-Legendre nodes and weights on [a, b] (n <= 64).
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace loopgas
