#pragma once

#include <cstdint>

#include "ibnet/types.hpp"

namespace ibnet {

// Closed-form dense maximum-entropy solution x_ij = a_i * l_j for marginals
// normalized to total 1. Allows self-exposure (full matrix incl. diagonal).
ExposureMatrix me_dense(const BalanceSheet& bs);

// Prior x0_ij = a_i * l_j off the diagonal, 0 on it.
ExposureMatrix zero_diagonal_prior(const BalanceSheet& bs);

// Iterative proportional fitting from the zero-diagonal prior: alternately
// rescales rows to match a and columns to match l. Stops when the Frobenius
// distance between successive complete iterates drops below cfg.delta.
ReconstructionReport ras(const BalanceSheet& bs, const SolverConfig& cfg = {});

// Sparse fixed-point scaling on support q:
//   psi_i <- a_i / sum_j q_ij phi_j,   phi_j <- l_j / sum_i q_ij psi_i,
// started from psi = a, phi = l; the solution is x_ij = q_ij psi_i phi_j.
//
// The raw (psi, phi) state is only determined up to a per-component gauge
// factor and genuinely diverges on supports that cannot carry the marginals,
// even while x itself converges. Convergence is therefore measured on the
// gauge-invariant row-sum vector of successive iterates: the step eta must
// fall below delta and so must the extrapolated remaining distance
// eta*rho/(1-rho) built from the observed contraction ratio, so that on a
// feasible support the reported deviation lands within a small multiple of
// delta rather than delta/(1-rho). The state is recentered so it stays
// representable, and cells whose value has collapsed to numerical zero are
// dropped from the active support. On feasible supports this coincides with
// the plain iteration up to the stricter stop; on infeasible ones it
// terminates at the same limit matrix, whose deviation epsilon is reported
// for the caller to judge.
ReconstructionReport sras(const BalanceSheet& bs, const AdjacencyMatrix& q,
                          const SolverConfig& cfg = {});

enum class Method { RAS, SRAS };

// Nominal multiply-accumulate count of one main-loop iteration: 4n^2 for
// RAS (two sum passes + two scale passes), 2n^2 for SRAS (two sum passes).
// Measured counters in ReconstructionReport.macs are validated against this.
std::uint64_t iteration_cost(std::size_t n, Method method);

}  // namespace ibnet
