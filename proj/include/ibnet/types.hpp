#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ibnet/errors.hpp"
#include "ibnet/matrix.hpp"

namespace ibnet {

// Exposure matrices are plain nonnegative square matrices; reconstructed ones
// additionally keep a zero diagonal.
using ExposureMatrix = Matrix;

// Marginal totals: a_i (row sums / interbank assets), l_j (column sums /
// liabilities), and the shared volume total = sum(a) = sum(l).
struct BalanceSheet {
    std::size_t n = 0;
    std::vector<double> assets;
    std::vector<double> liabilities;
    double total = 0.0;

    BalanceSheet() = default;
    BalanceSheet(std::vector<double> a, std::vector<double> l) {
        assets = std::move(a);
        liabilities = std::move(l);
        n = assets.size();
        if (n == 0 || liabilities.size() != n)
            throw DimensionError("balance sheet: assets/liabilities size mismatch");
        double sa = 0.0, sl = 0.0;
        for (double v : assets) {
            if (!(v > 0.0)) throw DimensionError("balance sheet: assets must be positive");
            sa += v;
        }
        for (double v : liabilities) {
            if (!(v > 0.0)) throw DimensionError("balance sheet: liabilities must be positive");
            sl += v;
        }
        if (std::abs(sa - sl) > 1e-9 * std::max(std::abs(sa), std::abs(sl)))
            throw DimensionError("balance sheet: total assets and liabilities differ");
        total = sa;
    }

    // Divides both vectors by `total` so the marginals sum to 1.
    BalanceSheet normalized() const {
        BalanceSheet bs;
        bs.n = n;
        bs.total = 1.0;
        bs.assets.reserve(n);
        bs.liabilities.reserve(n);
        for (double v : assets) bs.assets.push_back(v / total);
        for (double v : liabilities) bs.liabilities.push_back(v / total);
        return bs;
    }
};

// Binary support pattern q. Entries are 0.0 or 1.0; the diagonal is zero.
struct AdjacencyMatrix {
    Matrix m;

    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t n) : m(n) {}

    std::size_t n() const { return m.n(); }
    double operator()(std::size_t i, std::size_t j) const { return m(i, j); }
    double& operator()(std::size_t i, std::size_t j) { return m(i, j); }

    std::size_t ones_count() const {
        std::size_t k = 0;
        const double* d = m.data();
        for (std::size_t i = 0, e = m.n() * m.n(); i < e; ++i) k += (d[i] != 0.0);
        return k;
    }

    // Support condition: zero diagonal, every row and column has at least one 1.
    void validate_support() const {
        const std::size_t nn = m.n();
        if (nn < 2) throw SupportError("support requires n >= 2");
        for (std::size_t i = 0; i < nn; ++i)
            if (m(i, i) != 0.0) throw SupportError("support has a nonzero diagonal entry");
        for (std::size_t i = 0; i < nn; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < nn; ++j) {
                r += m(i, j);
                c += m(j, i);
            }
            if (r < 1.0) throw SupportError("support row " + std::to_string(i) + " is empty");
            if (c < 1.0) throw SupportError("support column " + std::to_string(i) + " is empty");
        }
    }
};

// Indicator pattern of a matrix: q_ij = 1 where x_ij != 0.
inline AdjacencyMatrix theta_pattern(const Matrix& x) {
    AdjacencyMatrix q(x.n());
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) q(i, j) = x(i, j) != 0.0 ? 1.0 : 0.0;
    return q;
}

struct SolverConfig {
    double delta = 1e-7;
    std::size_t max_iterations = 100000;
};

struct ReconstructionReport {
    ExposureMatrix solution;
    std::size_t iterations = 0;
    double final_step = 0.0;   // eta at the stopping iteration
    double deviation = 0.0;    // epsilon against the input marginals
    bool converged = false;
    std::uint64_t macs = 0;    // multiply-accumulate visits in the main loop
};

// Synthetic "true" network: exposures, their exact support, derived marginals.
struct GroundTruth {
    ExposureMatrix exposures;
    AdjacencyMatrix adjacency;
    BalanceSheet balance;
};

}  // namespace ibnet
