#pragma once

#include <cstdint>
#include <vector>

#include "ibnet/types.hpp"

namespace ibnet {

struct StressConfig {
    std::vector<double> initial_capital;  // c_i(0), all positive
    double theta = 0.0;                   // loss given default, in [0, 1]

    static StressConfig homogeneous(std::size_t n, double capital, double theta) {
        StressConfig cfg;
        cfg.initial_capital.assign(n, capital);
        cfg.theta = theta;
        return cfg;
    }
};

struct CascadeOutcome {
    std::size_t origin = 0;
    std::vector<std::size_t> failed;  // sorted, includes origin
    std::size_t rounds = 0;           // rounds that produced at least one new failure
    double fraction = 0.0;            // |failed| / N
};

// Synchronous default cascade. The origin fails at t=0; in each round every
// surviving bank j loses theta * sum of its exposures x_jn to the banks n
// that failed in the previous round, and fails when its capital reaches <= 0.
// Failed banks never recover and are charged exactly once.
CascadeOutcome cascade(const ExposureMatrix& x, const StressConfig& cfg, std::size_t origin);

// Mean default fraction over all N single-bank shocks.
double default_fraction(const ExposureMatrix& x, const StressConfig& cfg);

struct LogisticFit {
    double theta_star = 0.0;
    double beta = 0.0;
    double residual = 0.0;  // rms of fit residuals
};

// Least-squares fit of xi(theta) = 1 / (1 + exp(-beta (theta - theta_star))).
// Initialized at the theta nearest xi = 0.5 and the steepest finite-difference
// slope; Gauss-Newton with step halving until the gradient norm is <= 1e-9,
// at most 200 steps. Throws FitDegenerateError when the series cannot
// identify the parameters (all xi equal, or flat with no 0.5 crossing).
LogisticFit fit_logistic(const std::vector<double>& thetas, const std::vector<double>& xis);

}  // namespace ibnet
