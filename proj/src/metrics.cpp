#include "ibnet/metrics.hpp"

#include <cmath>
#include <string>

#include "ibnet/errors.hpp"

namespace ibnet {

double entropy_normalized(const ExposureMatrix& x) {
    const std::size_t n = x.n();
    if (n < 2) throw DimensionError("entropy_normalized: need n >= 2");
    double total = x.sum();
    if (std::abs(total - 1.0) > 1e-9)
        throw NormalizationError("entropy_normalized: entries must sum to 1, got " +
                                 std::to_string(total));
    double s = 0.0;
    const double* d = x.data();
    for (std::size_t i = 0, e = n * n; i < e; ++i) {
        const double v = d[i];
        if (v > 0.0) s -= v * std::log(v);
    }
    return s / (2.0 * std::log(static_cast<double>(n)));
}

double adjacency_entropy(double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw DimensionError("adjacency_entropy: kappa must be in (0,1)");
    return -kappa * std::log2(kappa) - (1.0 - kappa) * std::log2(1.0 - kappa);
}

double kl_divergence(const ExposureMatrix& x, const ExposureMatrix& x0) {
    if (x.n() != x0.n()) throw DimensionError("kl_divergence: dimension mismatch");
    double s = 0.0;
    const double* xd = x.data();
    const double* pd = x0.data();
    for (std::size_t i = 0, e = x.n() * x.n(); i < e; ++i) {
        if (xd[i] > 0.0) {
            if (pd[i] <= 0.0)
                throw InfiniteDivergenceError("kl_divergence: positive mass on zero-prior cell");
            s += xd[i] * std::log(xd[i] / pd[i]);
        }
    }
    return s;
}

double constraint_deviation(const ExposureMatrix& x, const BalanceSheet& bs) {
    const std::size_t n = x.n();
    if (n != bs.n) throw DimensionError("constraint_deviation: dimension mismatch");
    double num = 0.0, den = 0.0;
    std::vector<double> rows = x.row_sums();
    std::vector<double> cols = x.col_sums();
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = rows[i] - bs.assets[i];
        const double dc = cols[i] - bs.liabilities[i];
        num += dr * dr + dc * dc;
        den += bs.assets[i] * bs.assets[i] + bs.liabilities[i] * bs.liabilities[i];
    }
    return std::sqrt(num / den);
}

double connectivity(const AdjacencyMatrix& q) {
    const double nn = static_cast<double>(q.n()) * static_cast<double>(q.n());
    return static_cast<double>(q.ones_count()) / nn;
}

double sparsity(const AdjacencyMatrix& q) { return 1.0 - connectivity(q); }

}  // namespace ibnet
