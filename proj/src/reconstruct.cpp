#include "ibnet/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ibnet/errors.hpp"
#include "ibnet/metrics.hpp"

namespace ibnet {

ExposureMatrix me_dense(const BalanceSheet& bs) {
    if (std::abs(bs.total - 1.0) > 1e-9)
        throw NormalizationError("me_dense: marginals must be normalized to total 1");
    const std::size_t n = bs.n;
    ExposureMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = bs.assets[i] * bs.liabilities[j];
    return x;
}

ExposureMatrix zero_diagonal_prior(const BalanceSheet& bs) {
    const std::size_t n = bs.n;
    if (n < 2) throw DimensionError("zero_diagonal_prior: no off-diagonal cells at n=1");
    ExposureMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            x(i, j) = i == j ? 0.0 : bs.assets[i] * bs.liabilities[j];
    return x;
}

ReconstructionReport ras(const BalanceSheet& bs, const SolverConfig& cfg) {
    const std::size_t n = bs.n;
    ExposureMatrix x = zero_diagonal_prior(bs);
    ExposureMatrix prev(n);

    ReconstructionReport report;
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        prev = x;
        ++report.iterations;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += x(i, j);
            if (s < 1e-300)
                throw SupportError("ras: zero row sum at row " + std::to_string(i));
            const double f = bs.assets[i] / s;
            for (std::size_t j = 0; j < n; ++j) x(i, j) *= f;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += x(i, j);
            if (s < 1e-300)
                throw SupportError("ras: zero column sum at column " + std::to_string(j));
            const double f = bs.liabilities[j] / s;
            for (std::size_t i = 0; i < n; ++i) x(i, j) *= f;
        }
        report.macs += 4ull * n * n;

        double eta2 = 0.0;
        for (std::size_t k = 0; k < n * n; ++k) {
            const double d = x.data()[k] - prev.data()[k];
            eta2 += d * d;
        }
        report.final_step = std::sqrt(eta2);
        if (report.final_step < cfg.delta) {
            report.converged = true;
            break;
        }
    }
    report.solution = std::move(x);
    report.deviation = constraint_deviation(report.solution, bs);
    return report;
}

namespace {

// Union-find over the bipartite support graph: nodes 0..n-1 are rows,
// n..2n-1 are columns. Components carry the per-component gauge freedom.
struct Components {
    std::vector<std::size_t> row_comp, col_comp;
    std::size_t count = 0;
};

Components support_components(const Matrix& q) {
    const std::size_t n = q.n();
    std::vector<std::size_t> parent(2 * n);
    for (std::size_t v = 0; v < 2 * n; ++v) parent[v] = v;
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (q(i, j) != 0.0) {
                const std::size_t a = find(i), b = find(n + j);
                if (a != b) parent[a] = b;
            }
    Components c;
    c.row_comp.resize(n);
    c.col_comp.resize(n);
    std::vector<std::size_t> label(2 * n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (label[r] == SIZE_MAX) label[r] = c.count++;
        c.row_comp[i] = label[r];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = find(n + j);
        if (label[r] == SIZE_MAX) label[r] = c.count++;
        c.col_comp[j] = label[r];
    }
    return c;
}

// Gauge fix: within each component, equalize max(log psi) and max(log phi).
// Cell values psi_i*phi_j are invariant; since they converge to finite
// limits, both maxima stay O(1) and the state remains representable.
void recenter(std::vector<double>& psi, std::vector<double>& phi, const Components& comps) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> mp(comps.count, neg_inf), mf(comps.count, neg_inf);
    for (std::size_t i = 0; i < psi.size(); ++i)
        mp[comps.row_comp[i]] = std::max(mp[comps.row_comp[i]], std::log(psi[i]));
    for (std::size_t j = 0; j < phi.size(); ++j)
        mf[comps.col_comp[j]] = std::max(mf[comps.col_comp[j]], std::log(phi[j]));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const std::size_t k = comps.row_comp[i];
        psi[i] = std::exp(std::log(psi[i]) - 0.5 * (mp[k] - mf[k]));
    }
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const std::size_t k = comps.col_comp[j];
        phi[j] = std::exp(std::log(phi[j]) + 0.5 * (mp[k] - mf[k]));
    }
}

// Drops support cells whose value psi_i*phi_j has collapsed below the
// representability floor; they are numerically zero in the limit matrix.
// Never empties a row or column: the largest cell of a dying line is kept.
bool prune_dead_cells(Matrix& q, const std::vector<double>& psi, const std::vector<double>& phi,
                      double floor_log) {
    const std::size_t n = q.n();
    std::vector<double> lp(n), lf(n);
    for (std::size_t i = 0; i < n; ++i) lp[i] = std::log(psi[i]);
    for (std::size_t j = 0; j < n; ++j) lf[j] = std::log(phi[j]);

    std::vector<char> dead(n * n, 0);
    std::vector<std::size_t> live_row(n, 0), dead_row(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (q(i, j) != 0.0) {
                ++live_row[i];
                if (lp[i] + lf[j] < floor_log) {
                    dead[i * n + j] = 1;
                    ++dead_row[i];
                }
            }
    for (std::size_t i = 0; i < n; ++i) {
        if (dead_row[i] == 0 || dead_row[i] < live_row[i]) continue;
        std::size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (q(i, j) != 0.0 && lp[i] + lf[j] > best_v) {
                best_v = lp[i] + lf[j];
                best = j;
            }
        dead[i * n + best] = 0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t live = 0, dying = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (q(i, j) != 0.0) {
                ++live;
                dying += dead[i * n + j];
            }
        if (dying == 0 || dying < live) continue;
        std::size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (q(i, j) != 0.0 && lp[i] + lf[j] > best_v) {
                best_v = lp[i] + lf[j];
                best = i;
            }
        dead[best * n + j] = 0;
    }

    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dead[i * n + j]) {
                q(i, j) = 0.0;
                any = true;
            }
    return any;
}

}  // namespace

ReconstructionReport sras(const BalanceSheet& bs, const AdjacencyMatrix& q_in,
                          const SolverConfig& cfg) {
    const std::size_t n = bs.n;
    if (q_in.n() != n) throw DimensionError("sras: support dimension mismatch");
    q_in.validate_support();

    Matrix q = q_in.m;  // working copy; dead cells are removed from it
    std::vector<double> psi = bs.assets;
    std::vector<double> phi = bs.liabilities;
    std::vector<double> r(n), r_prev(n);
    const double floor_log = std::log(1e-120 * bs.total / (static_cast<double>(n) * n));

    Components comps = support_components(q);

    // fp-stagnation floor for the stopping rule: once steps sit at rounding
    // noise of the r scale, the iterate is bitwise (or ulp-cycle) stationary
    double anorm2 = 0.0;
    for (double v : bs.assets) anorm2 += v * v;
    const double step_floor = 1e-14 * std::sqrt(anorm2);

    ReconstructionReport report;
    bool have_prev = false;
    double prev_step = -1.0;
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        ++report.iterations;
        // psi pass; r_i = psi_i * s_i is row i's sum of the previous complete
        // iterate, the gauge-invariant vector the stopping rule watches.
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += q(i, j) * phi[j];
            if (s < 1e-300)
                throw SupportError("sras: scaling sum underflow at row " + std::to_string(i));
            r[i] = psi[i] * s;
            psi[i] = bs.assets[i] / s;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double t = 0.0;
            for (std::size_t i = 0; i < n; ++i) t += q(i, j) * psi[i];
            if (t < 1e-300)
                throw SupportError("sras: scaling sum underflow at column " + std::to_string(j));
            phi[j] = bs.liabilities[j] / t;
        }
        report.macs += 2ull * n * n;

        double minf = psi[0], maxf = psi[0];
        for (double v : psi) {
            minf = std::min(minf, v);
            maxf = std::max(maxf, v);
        }
        for (double v : phi) {
            minf = std::min(minf, v);
            maxf = std::max(maxf, v);
        }
        if (minf < 1e-30 || maxf > 1e50) {
            if (prune_dead_cells(q, psi, phi, floor_log)) comps = support_components(q);
        }
        recenter(psi, phi, comps);

        if (have_prev) {
            double eta2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = r[i] - r_prev[i];
                eta2 += d * d;
            }
            const double step = std::sqrt(eta2);
            report.final_step = step;
            // The step underestimates the distance to the limit by 1/(1-rho)
            // on a linearly converging tail, so requiring only step <= delta
            // would stop with the constraints still off by step*rho/(1-rho)
            // on slow instances. Extrapolate with the measured ratio and
            // require the estimated remaining distance under delta as well.
            double rho = prev_step > 0.0 ? step / prev_step : 0.0;
            rho = std::clamp(rho, 0.0, 0.9999);
            const double remaining = step * rho / (1.0 - rho);
            if ((step <= cfg.delta && remaining <= cfg.delta) || step <= step_floor) {
                report.converged = true;
                break;
            }
            prev_step = step;
        }
        r_prev = r;
        have_prev = true;
    }

    ExposureMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (q(i, j) != 0.0) x(i, j) = psi[i] * phi[j];
    report.solution = std::move(x);
    report.deviation = constraint_deviation(report.solution, bs);
    return report;
}

std::uint64_t iteration_cost(std::size_t n, Method method) {
    const std::uint64_t nn = static_cast<std::uint64_t>(n) * n;
    return method == Method::RAS ? 4 * nn : 2 * nn;
}

}  // namespace ibnet
