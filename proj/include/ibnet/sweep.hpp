#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ibnet/types.hpp"

namespace ibnet {

struct SweepPlan {
    std::vector<std::size_t> n_values;
    // <= 0 means "use the natural bound for each n": kappa_min = 1/n,
    // kappa_max = 1 - 1/n. steps is the number of grid intervals M.
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    std::size_t steps = 100;
    std::size_t trials = 1000;
    double delta = 1e-7;
    std::uint64_t seed = 0;
    double epsilon_star = 0.005;
};

struct SweepRecord {
    std::size_t n = 0;
    double kappa = 0.0;
    double mean_epsilon = 0.0;
    double mean_sx = 0.0;
    double sq = 0.0;
    double predicted_epsilon = 0.0;
    bool feasible = false;  // mean_epsilon < epsilon_star
};

// Gaussian law for the mean constraint deviation of random sparse supports:
// eps(kappa, N) = 0.5 * exp(-(N kappa - 1)^2 / 8).
double predicted_epsilon(std::size_t n, double kappa);

// Critical connectivity where the law crosses eps*, (1 + sqrt(8 ln(1/(2 eps*)))) / N.
double kappa_star(double epsilon_star, std::size_t n);

struct FeasibilitySweepResult {
    std::vector<SweepRecord> records;
    std::size_t solver_failures = 0;  // runs that hit the iteration cap
};

// For every (n, kappa) grid point: `trials` independent draws of a balance
// sheet and a random support, one SRAS run each; records the mean deviation
// and mean solution entropy next to the closed-form prediction.
FeasibilitySweepResult sweep_feasibility(const SweepPlan& plan);

enum class Arm { TRUE_MATRIX, ME, SME };

const char* arm_name(Arm arm);  // "true", "me", "sme"

struct ContagionPlan {
    std::size_t n = 50;
    std::vector<double> kappas;
    double theta_min = 0.0;
    double theta_max = 1.0;
    std::size_t theta_steps = 50;
    std::size_t trials = 100;
    double capital = 0.01;
    double lambda = 0.0;  // <= 0 means lambda = n
    double delta = 1e-7;
    std::uint64_t seed = 0;
    bool use_true_support = false;  // SME on the true pattern instead of a fresh draw
    std::vector<Arm> arms = {Arm::TRUE_MATRIX, Arm::ME, Arm::SME};
};

struct ContagionRecord {
    double theta = 0.0;
    double kappa = 0.0;
    Arm arm = Arm::TRUE_MATRIX;
    double xi_mean = 0.0;  // mean over trials of the per-trial mean over origins
    double xi_min = 0.0;   // min over trials
    double xi_max = 0.0;   // max over trials
};

struct ContagionSweepResult {
    std::vector<ContagionRecord> records;
    std::size_t solver_failures = 0;
};

// For every (kappa, trial): draw a ground truth, reconstruct it with RAS from
// its marginals (ME arm) and with SRAS on a freshly drawn support of the same
// connectivity (SME arm), then stress every matrix across the theta grid.
ContagionSweepResult sweep_contagion(const ContagionPlan& plan);

struct ArmFit {
    double kappa = 0.0;
    Arm arm = Arm::TRUE_MATRIX;
    double theta_star = 0.0;
    double beta = 0.0;
    double residual = 0.0;
    bool ok = false;  // false when the series was degenerate and skipped
};

// Logistic fit of xi_mean(theta) per (kappa, arm) series.
std::vector<ArmFit> fit_sweep(const std::vector<ContagionRecord>& records);

}  // namespace ibnet
