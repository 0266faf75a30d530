#pragma once

#include <vector>

#include "ibnet/rng.hpp"
#include "ibnet/types.hpp"

namespace ibnet {

// Cyclic-shuffle derangement: swap p_i with p_j, j uniform in {0,...,i-1},
// for i from n-1 down to 1. Always yields a single n-cycle, so p_i != i.
std::vector<std::size_t> random_derangement(std::size_t n, RngStream& rng);

// Random support with exactly round(kappa n^2) ones (clamped to [n, n^2-n]),
// zero diagonal, every row and column nonempty: a derangement permutation
// seed plus uniformly drawn extra cells, resolving collisions by forward
// linear probing over the column-major cell index m (j = m / n, i = m - j*n).
// The probing step is kept deliberately simple and is not occupancy-unbiased:
// skipping diagonal cells hands their landing probability to the cell just
// below, so subdiagonal cells are measurably overrepresented (about +50% at
// n=20, kappa=0.2). Pairwise statistics between independent streams are
// unaffected at any practical significance level.
AdjacencyMatrix random_adjacency(std::size_t n, double kappa, RngStream& rng);

// Marginals drawn i.i.d. uniform on (0,1), each vector rescaled to `total`.
// Draw order: all n assets first, then all n liabilities.
BalanceSheet random_balance_sheet(std::size_t n, double total, RngStream& rng);

// Synthetic true network: support from random_adjacency, an independent
// uniform(0,1) weight on every support cell (row-major order), rescaled so
// the total volume is `total`; marginals are the exact row/column sums.
GroundTruth random_ground_truth(std::size_t n, double kappa, double total, RngStream& rng);

}  // namespace ibnet
