#include "ibnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ibnet/errors.hpp"

namespace ibnet {

std::vector<std::size_t> random_derangement(std::size_t n, RngStream& rng) {
    if (n < 2) throw DimensionError("random_derangement: no derangement exists for n < 2");
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t j = rng.rand_below(i);  // j < i: forces a single n-cycle
        std::swap(p[i], p[j]);
    }
    return p;
}

AdjacencyMatrix random_adjacency(std::size_t n, double kappa, RngStream& rng) {
    if (n < 2) throw DimensionError("random_adjacency: need n >= 2");
    const std::size_t nn = n * n;
    std::size_t ones = static_cast<std::size_t>(std::llround(kappa * static_cast<double>(nn)));
    ones = std::clamp(ones, n, nn - n);

    AdjacencyMatrix q(n);
    const std::vector<std::size_t> p = random_derangement(n, rng);
    for (std::size_t i = 0; i < n; ++i) q(i, p[i]) = 1.0;

    for (std::size_t k = n; k < ones; ++k) {
        std::size_t m = rng.rand_below(nn);
        std::size_t j = m / n, i = m - j * n;  // column-major cell index
        while (q(i, j) == 1.0 || i == j) {
            m = (m + 1) % nn;
            j = m / n;
            i = m - j * n;
        }
        q(i, j) = 1.0;
    }
    return q;
}

BalanceSheet random_balance_sheet(std::size_t n, double total, RngStream& rng) {
    if (n < 2) throw DimensionError("random_balance_sheet: need n >= 2");
    std::vector<double> a(n), l(n);
    double sa = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < n; ++i) sa += a[i] = rng.uniform01();
    for (std::size_t j = 0; j < n; ++j) sl += l[j] = rng.uniform01();
    for (std::size_t i = 0; i < n; ++i) a[i] *= total / sa;
    for (std::size_t j = 0; j < n; ++j) l[j] *= total / sl;
    return BalanceSheet(std::move(a), std::move(l));
}

GroundTruth random_ground_truth(std::size_t n, double kappa, double total, RngStream& rng) {
    GroundTruth gt;
    gt.adjacency = random_adjacency(n, kappa, rng);
    gt.exposures = ExposureMatrix(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (gt.adjacency(i, j) != 0.0) mass += gt.exposures(i, j) = rng.uniform01();
    const double f = total / mass;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gt.exposures(i, j) *= f;
    gt.balance = BalanceSheet(gt.exposures.row_sums(), gt.exposures.col_sums());
    return gt;
}

}  // namespace ibnet
