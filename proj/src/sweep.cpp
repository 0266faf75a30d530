#include "ibnet/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "ibnet/contagion.hpp"
#include "ibnet/errors.hpp"
#include "ibnet/metrics.hpp"
#include "ibnet/netgen.hpp"
#include "ibnet/reconstruct.hpp"

namespace ibnet {

double predicted_epsilon(std::size_t n, double kappa) {
    const double z = static_cast<double>(n) * kappa - 1.0;
    return 0.5 * std::exp(-z * z / 8.0);
}

double kappa_star(double epsilon_star, std::size_t n) {
    return (1.0 + std::sqrt(8.0 * std::log(1.0 / (2.0 * epsilon_star)))) /
           static_cast<double>(n);
}

FeasibilitySweepResult sweep_feasibility(const SweepPlan& plan) {
    if (plan.n_values.empty()) throw DimensionError("sweep_feasibility: no network sizes");
    if (plan.trials == 0) throw DimensionError("sweep_feasibility: trials must be positive");

    FeasibilitySweepResult result;
    SolverConfig cfg;
    cfg.delta = plan.delta;

    std::size_t point_index = 0;
    for (std::size_t n : plan.n_values) {
        const double kmin = plan.kappa_min > 0.0 ? plan.kappa_min : 1.0 / static_cast<double>(n);
        const double kmax =
            plan.kappa_max > 0.0 ? plan.kappa_max : 1.0 - 1.0 / static_cast<double>(n);
        const double dk =
            plan.steps > 0 ? (kmax - kmin) / static_cast<double>(plan.steps) : 0.0;
        for (std::size_t k = 0; k <= plan.steps; ++k, ++point_index) {
            const double kappa = kmin + dk * static_cast<double>(k);
            double sum_eps = 0.0, sum_sx = 0.0;
            for (std::size_t trial = 0; trial < plan.trials; ++trial) {
                RngStream rng(plan.seed, point_index * plan.trials + trial);
                const BalanceSheet bs = random_balance_sheet(n, 1.0, rng);
                const AdjacencyMatrix q = random_adjacency(n, kappa, rng);
                const ReconstructionReport rep = sras(bs, q, cfg);
                if (!rep.converged) ++result.solver_failures;
                sum_eps += rep.deviation;

                ExposureMatrix xn = rep.solution;
                const double mass = xn.sum();
                for (std::size_t c = 0; c < n * n; ++c) xn.data()[c] /= mass;
                sum_sx += entropy_normalized(xn);
            }
            SweepRecord rec;
            rec.n = n;
            rec.kappa = kappa;
            rec.mean_epsilon = sum_eps / static_cast<double>(plan.trials);
            rec.mean_sx = sum_sx / static_cast<double>(plan.trials);
            rec.sq = adjacency_entropy(kappa);
            rec.predicted_epsilon = predicted_epsilon(n, kappa);
            rec.feasible = rec.mean_epsilon < plan.epsilon_star;
            result.records.push_back(rec);
        }
    }
    return result;
}

const char* arm_name(Arm arm) {
    switch (arm) {
        case Arm::TRUE_MATRIX: return "true";
        case Arm::ME: return "me";
        default: return "sme";
    }
}

ContagionSweepResult sweep_contagion(const ContagionPlan& plan) {
    if (plan.kappas.empty()) throw DimensionError("sweep_contagion: no kappa values");
    if (plan.trials == 0 || plan.theta_steps == 0)
        throw DimensionError("sweep_contagion: trials and theta steps must be positive");
    const std::size_t n = plan.n;
    const double lambda = plan.lambda > 0.0 ? plan.lambda : static_cast<double>(n);

    std::vector<double> thetas(plan.theta_steps + 1);
    for (std::size_t t = 0; t <= plan.theta_steps; ++t)
        thetas[t] = plan.theta_min +
                    (plan.theta_max - plan.theta_min) * static_cast<double>(t) /
                        static_cast<double>(plan.theta_steps);

    SolverConfig cfg;
    cfg.delta = plan.delta;

    ContagionSweepResult result;
    for (std::size_t ki = 0; ki < plan.kappas.size(); ++ki) {
        const double kappa = plan.kappas[ki];
        // accumulate per (theta, arm): sum / min / max over trials
        std::map<std::pair<std::size_t, Arm>, std::array<double, 3>> acc;
        for (std::size_t t = 0; t <= plan.theta_steps; ++t)
            for (Arm arm : plan.arms)
                acc[{t, arm}] = {0.0, std::numeric_limits<double>::infinity(),
                                 -std::numeric_limits<double>::infinity()};

        for (std::size_t trial = 0; trial < plan.trials; ++trial) {
            RngStream rng(plan.seed, ki * plan.trials + trial);
            const GroundTruth gt = random_ground_truth(n, kappa, lambda, rng);

            std::vector<std::pair<Arm, ExposureMatrix>> mats;
            for (Arm arm : plan.arms) {
                if (arm == Arm::TRUE_MATRIX) {
                    mats.emplace_back(arm, gt.exposures);
                } else if (arm == Arm::ME) {
                    ReconstructionReport rep = ras(gt.balance, cfg);
                    if (!rep.converged) ++result.solver_failures;
                    mats.emplace_back(arm, std::move(rep.solution));
                } else {
                    const AdjacencyMatrix support =
                        plan.use_true_support ? gt.adjacency
                                              : random_adjacency(n, kappa, rng);
                    ReconstructionReport rep = sras(gt.balance, support, cfg);
                    if (!rep.converged) ++result.solver_failures;
                    mats.emplace_back(arm, std::move(rep.solution));
                }
            }
            for (std::size_t t = 0; t <= plan.theta_steps; ++t) {
                StressConfig scfg = StressConfig::homogeneous(n, plan.capital, thetas[t]);
                for (const auto& [arm, mat] : mats) {
                    const double xi = default_fraction(mat, scfg);
                    auto& a = acc[{t, arm}];
                    a[0] += xi;
                    a[1] = std::min(a[1], xi);
                    a[2] = std::max(a[2], xi);
                }
            }
        }

        for (std::size_t t = 0; t <= plan.theta_steps; ++t)
            for (Arm arm : plan.arms) {
                const auto& a = acc[{t, arm}];
                ContagionRecord rec;
                rec.theta = thetas[t];
                rec.kappa = kappa;
                rec.arm = arm;
                rec.xi_mean = a[0] / static_cast<double>(plan.trials);
                rec.xi_min = a[1];
                rec.xi_max = a[2];
                result.records.push_back(rec);
            }
    }
    return result;
}

std::vector<ArmFit> fit_sweep(const std::vector<ContagionRecord>& records) {
    std::map<std::pair<double, Arm>, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const ContagionRecord& rec : records) {
        auto& s = series[{rec.kappa, rec.arm}];
        s.first.push_back(rec.theta);
        s.second.push_back(rec.xi_mean);
    }
    std::vector<ArmFit> fits;
    for (auto& [key, s] : series) {
        ArmFit f;
        f.kappa = key.first;
        f.arm = key.second;
        try {
            const LogisticFit lf = fit_logistic(s.first, s.second);
            f.theta_star = lf.theta_star;
            f.beta = lf.beta;
            f.residual = lf.residual;
            f.ok = true;
        } catch (const FitDegenerateError&) {
            f.ok = false;
        }
        fits.push_back(f);
    }
    return fits;
}

}  // namespace ibnet
