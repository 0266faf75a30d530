#include "ibnet/contagion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibnet/errors.hpp"

namespace ibnet {

CascadeOutcome cascade(const ExposureMatrix& x, const StressConfig& cfg, std::size_t origin) {
    const std::size_t n = x.n();
    if (cfg.initial_capital.size() != n)
        throw DimensionError("cascade: capital vector size mismatch");
    if (origin >= n) throw DimensionError("cascade: origin out of range");
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0))
        throw DimensionError("cascade: theta must be in [0,1]");

    std::vector<double> capital = cfg.initial_capital;
    std::vector<char> failed(n, 0);
    failed[origin] = 1;
    std::vector<std::size_t> newly = {origin};

    CascadeOutcome out;
    out.origin = origin;
    while (!newly.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t j = 0; j < n; ++j) {
            if (failed[j]) continue;
            double loss = 0.0;
            for (std::size_t f : newly) loss += x(j, f);
            capital[j] -= cfg.theta * loss;
            if (capital[j] <= 0.0) next.push_back(j);
        }
        for (std::size_t j : next) failed[j] = 1;
        if (!next.empty()) ++out.rounds;
        newly = std::move(next);
    }
    for (std::size_t j = 0; j < n; ++j)
        if (failed[j]) out.failed.push_back(j);
    out.fraction = static_cast<double>(out.failed.size()) / static_cast<double>(n);
    return out;
}

double default_fraction(const ExposureMatrix& x, const StressConfig& cfg) {
    const std::size_t n = x.n();
    double s = 0.0;
    for (std::size_t origin = 0; origin < n; ++origin)
        s += cascade(x, cfg, origin).fraction;
    return s / static_cast<double>(n);
}

namespace {

double logistic(double t, double ts, double beta) {
    return 1.0 / (1.0 + std::exp(-beta * (t - ts)));
}

double sse(const std::vector<double>& thetas, const std::vector<double>& xis, double ts,
           double beta) {
    double s = 0.0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const double e = xis[k] - logistic(thetas[k], ts, beta);
        s += e * e;
    }
    return s;
}

}  // namespace

LogisticFit fit_logistic(const std::vector<double>& thetas, const std::vector<double>& xis) {
    const std::size_t m = thetas.size();
    if (m < 5 || xis.size() != m) throw DimensionError("fit_logistic: need >= 5 points");

    const double xi_min = *std::min_element(xis.begin(), xis.end());
    const double xi_max = *std::max_element(xis.begin(), xis.end());
    if (xi_max - xi_min < 1e-12)
        throw FitDegenerateError("fit_logistic: all xi equal, beta unidentifiable");

    // Initial midpoint: theta at the point nearest xi = 0.5; initial rate from
    // the steepest finite-difference slope.
    std::size_t i0 = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (std::abs(xis[k] - 0.5) < std::abs(xis[i0] - 0.5)) i0 = k;
    double max_slope = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double dt = thetas[k + 1] - thetas[k];
        if (dt != 0.0) max_slope = std::max(max_slope, std::abs((xis[k + 1] - xis[k]) / dt));
    }
    if (max_slope <= 0.0)
        throw FitDegenerateError("fit_logistic: flat series with no transition");

    double ts = thetas[i0];
    double beta = std::max(4.0 * max_slope, 1.0);

    for (std::size_t step = 0; step < 200; ++step) {
        // Gauss-Newton on residuals e_k = xi_k - f(theta_k).
        double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double f = logistic(thetas[k], ts, beta);
            const double e = xis[k] - f;
            const double w = f * (1.0 - f);
            const double d_ts = -beta * w;
            const double d_beta = (thetas[k] - ts) * w;
            jtj00 += d_ts * d_ts;
            jtj01 += d_ts * d_beta;
            jtj11 += d_beta * d_beta;
            g0 += d_ts * e;
            g1 += d_beta * e;
        }
        if (std::sqrt(g0 * g0 + g1 * g1) <= 1e-9) break;
        const double det = jtj00 * jtj11 - jtj01 * jtj01;
        if (std::abs(det) < 1e-300)
            throw FitDegenerateError("fit_logistic: singular normal equations");
        double step_ts = (jtj11 * g0 - jtj01 * g1) / det;
        double step_beta = (jtj00 * g1 - jtj01 * g0) / det;

        // Halve the step until it does not increase the objective.
        const double before = sse(thetas, xis, ts, beta);
        double scale = 1.0;
        for (int h = 0; h < 60; ++h) {
            if (sse(thetas, xis, ts + scale * step_ts, beta + scale * step_beta) <= before)
                break;
            scale *= 0.5;
        }
        ts += scale * step_ts;
        beta += scale * step_beta;
    }

    LogisticFit fit;
    fit.theta_star = ts;
    fit.beta = beta;
    fit.residual = std::sqrt(sse(thetas, xis, ts, beta) / static_cast<double>(m));
    return fit;
}

}  // namespace ibnet
