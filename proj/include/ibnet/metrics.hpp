#pragma once

#include "ibnet/matrix.hpp"
#include "ibnet/types.hpp"

namespace ibnet {

// Normalized matrix entropy -(1/(2 ln N)) sum x ln x, with 0 ln 0 = 0.
// Input entries must sum to 1 (normalize by the volume first).
double entropy_normalized(const ExposureMatrix& x);

// Binary entropy of the support density: -k log2 k - (1-k) log2(1-k), k in (0,1).
double adjacency_entropy(double kappa);

// KL divergence sum x ln(x/x0) over x > 0. Positive mass on a zero-prior
// cell throws InfiniteDivergenceError.
double kl_divergence(const ExposureMatrix& x, const ExposureMatrix& x0);

// Relative rms deviation of the matrix marginals from the balance sheet:
// sqrt([sum_i (row_i - a_i)^2 + sum_j (col_j - l_j)^2] / [sum a^2 + sum l^2]).
double constraint_deviation(const ExposureMatrix& x, const BalanceSheet& bs);

// Fraction of ones: kappa = N^-2 sum q_ij.
double connectivity(const AdjacencyMatrix& q);

// sigma = 1 - kappa.
double sparsity(const AdjacencyMatrix& q);

}  // namespace ibnet
