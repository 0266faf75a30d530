// End-to-end gate for the experiment pipeline. Each numbered check prints a
// single PASS/FAIL line with its measured numbers; the exit code is the
// number of failing checks. Checks 1-2 exercise the feasibility sweep, 3-4
// the solvers against each other and a convex reference, 5 the generator,
// 6-7 the contagion experiments, 8 the operation counters, 9 the randomized
// property suites.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "ibnet/contagion.hpp"
#include "ibnet/metrics.hpp"
#include "ibnet/netgen.hpp"
#include "ibnet/reconstruct.hpp"
#include "ibnet/rng.hpp"
#include "ibnet/sweep.hpp"
#include "ibnet/types.hpp"
#include "oracle.hpp"
#include "properties.hpp"

using namespace ibnet;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

AdjacencyMatrix full_off_diagonal(std::size_t n) {
    AdjacencyMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = i == j ? 0.0 : 1.0;
    return q;
}

FeasibilitySweepResult run_feasibility(std::size_t n) {
    SweepPlan plan;
    plan.n_values = {n};
    plan.steps = 50;
    plan.trials = 100;
    plan.delta = 1e-7;
    plan.seed = 90210;
    plan.epsilon_star = 0.005;
    return sweep_feasibility(plan);
}

// 1: the measured mean deviation curve follows the gaussian law
// 2: the first feasible grid point sits within one step of the predicted
//    critical connectivity
void check_feasibility_law(const std::vector<SweepRecord>& recs25,
                           const std::vector<SweepRecord>& recs50) {
    double rms25 = 0.0, rms50 = 0.0;
    for (const auto& r : recs25) {
        const double d = r.mean_epsilon - r.predicted_epsilon;
        rms25 += d * d;
    }
    for (const auto& r : recs50) {
        const double d = r.mean_epsilon - r.predicted_epsilon;
        rms50 += d * d;
    }
    rms25 = std::sqrt(rms25 / static_cast<double>(recs25.size()));
    rms50 = std::sqrt(rms50 / static_cast<double>(recs50.size()));
    report(1, rms25 <= 0.05 && rms50 <= 0.05,
           fmt("gaussian-law rms: N=25 %.4f, N=50 %.4f (bound 0.05)", rms25, rms50));

    bool pass = true;
    std::string detail;
    for (const auto* recs : {&recs25, &recs50}) {
        const std::size_t n = recs->front().n;
        const double dk = (*recs)[1].kappa - (*recs)[0].kappa;
        const double ks = kappa_star(0.005, n);
        double first = -1.0;
        for (const auto& r : *recs)
            if (r.feasible) {
                first = r.kappa;
                break;
            }
        const double dist = std::abs(first - ks);
        pass = pass && first >= 0.0 && dist <= dk + 1e-12;
        detail += fmt("N=%zu: first feasible k=%.4f, k*=%.4f, |diff|=%.4f vs step %.4f;  ",
                      n, first, ks, dist, dk);
    }
    report(2, pass, detail);
}

// 3: sparse solver on the full off-diagonal support equals the dense solver
void check_solver_equivalence() {
    SolverConfig cfg;
    cfg.delta = 1e-10;
    double worst_diff = 0.0, worst_eps = 0.0;
    bool pass = true;
    for (std::size_t n : {5ul, 25ul, 100ul}) {
        const AdjacencyMatrix full = full_off_diagonal(n);
        for (std::uint64_t t = 0; t < 50; ++t) {
            RngStream rng(331, n * 1000 + t);
            // feasibility-conditioned draw: a_i + l_i > 1 makes the
            // zero-diagonal problem unsolvable, so neither method can land
            // inside the marginal band there
            const BalanceSheet bs = testhelp::dense_feasible_sheet(n, rng);
            const auto dense = ras(bs, cfg);
            const auto sparse = sras(bs, full, cfg);
            if (!dense.converged || !sparse.converged) pass = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    worst_diff = std::max(
                        worst_diff, std::abs(dense.solution(i, j) - sparse.solution(i, j)));
            worst_eps = std::max({worst_eps, dense.deviation, sparse.deviation});
        }
    }
    pass = pass && worst_diff <= 1e-6 && worst_eps <= 1e-6;
    report(3, pass,
           fmt("150 instances at N in {5,25,100}: max elementwise gap %.2e, max eps %.2e "
               "(bounds 1e-6)",
               worst_diff, worst_eps));
}

// 4: the dense solver agrees with an independent convex solver
void check_oracle_equivalence() {
    SolverConfig cfg;
    cfg.delta = 1e-12;
    double worst = 0.0;
    bool pass = true;
    std::size_t count = 0;
    for (std::size_t n : {3ul, 4ul, 5ul}) {
        for (std::uint64_t t = 0; t < 20; ++t) {
            RngStream rng(441, n * 100 + t);
            const BalanceSheet bs = testhelp::dense_feasible_sheet(n, rng);
            const auto rep = ras(bs, cfg);
            if (!rep.converged) pass = false;
            const Matrix ref =
                testhelp::kl_projection_oracle(zero_diagonal_prior(bs), bs.assets, bs.liabilities);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(rep.solution(i, j) - ref(i, j)));
            ++count;
        }
    }
    pass = pass && worst <= 1e-6;
    report(4, pass, fmt("%zu instances at N in {3,4,5}: max elementwise gap %.2e (bound 1e-6)",
                        count, worst));
}

// 5: generator draws have the exact one-count and support condition; minimal
//    connectivity always yields a single-cycle permutation
void check_generator_exactness() {
    std::size_t draws = 0, cycle_checks = 0;
    bool pass = true;
    std::uint64_t stream = 0;
    for (std::size_t n : {10ul, 25ul, 50ul}) {
        for (int kstep = 0; kstep <= 10 && draws < 1200; ++kstep) {
            const double kmin = 1.0 / static_cast<double>(n);
            const double kmax = 1.0 - kmin;
            const double kappa = kmin + (kmax - kmin) * static_cast<double>(kstep) / 10.0;
            for (int rep = 0; rep < 31; ++rep) {
                RngStream rng(551, stream++);
                const AdjacencyMatrix q = random_adjacency(n, kappa, rng);
                ++draws;
                const long long want = std::llround(kappa * static_cast<double>(n * n));
                const long long lo = static_cast<long long>(n);
                const long long hi = static_cast<long long>(n * n - n);
                const long long clamped = std::min(std::max(want, lo), hi);
                if (static_cast<long long>(q.ones_count()) != clamped) pass = false;
                try {
                    q.validate_support();
                } catch (const Error&) {
                    pass = false;
                }
                if (q.ones_count() == n) {
                    // must be a permutation forming one cycle
                    std::vector<std::size_t> p(n, n);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            if (q(i, j) != 0.0) {
                                if (p[i] != n) pass = false;
                                p[i] = j;
                            }
                    std::size_t at = 0, len = 0;
                    do {
                        if (p[at] == n || p[at] == at) {
                            pass = false;
                            break;
                        }
                        at = p[at];
                        ++len;
                    } while (at != 0 && len <= n);
                    if (len != n) pass = false;
                    ++cycle_checks;
                }
            }
        }
    }
    report(5, pass && draws >= 1000 && cycle_checks >= 30,
           fmt("%zu draws across the grid, %zu single-cycle checks at k=1/N", draws,
               cycle_checks));
}

ContagionPlan contagion_base() {
    ContagionPlan plan;
    plan.n = 50;
    plan.theta_min = 0.0;
    plan.theta_max = 1.0;
    plan.theta_steps = 50;
    plan.trials = 50;
    plan.capital = 0.01;
    plan.lambda = 50.0;
    plan.delta = 1e-7;
    return plan;
}

double fitted(const std::vector<ArmFit>& fits, double kappa, Arm arm, bool& ok, bool beta = false) {
    for (const auto& f : fits)
        if (f.arm == arm && std::abs(f.kappa - kappa) < 1e-12) {
            ok = ok && f.ok;
            return beta ? f.beta : f.theta_star;
        }
    ok = false;
    return 0.0;
}

// 6: reconstructed networks order the fitted critical loss rates as
//    me > sme >= true - 0.05
void check_contagion_ordering() {
    ContagionPlan plan = contagion_base();
    plan.kappas = {0.05, 0.1, 0.2};
    plan.seed = 777;
    const auto res = sweep_contagion(plan);
    const auto fits = fit_sweep(res.records);
    bool pass = true;
    std::string detail;
    for (double kappa : plan.kappas) {
        bool ok = true;
        const double t_true = fitted(fits, kappa, Arm::TRUE_MATRIX, ok);
        const double t_me = fitted(fits, kappa, Arm::ME, ok);
        const double t_sme = fitted(fits, kappa, Arm::SME, ok);
        pass = pass && ok && t_me > t_sme && t_sme >= t_true - 0.05;
        detail += fmt("k=%.2f: true %.3f, me %.3f, sme %.3f;  ", kappa, t_true, t_me, t_sme);
    }
    report(6, pass, detail);
}

// 7: for true matrices the fitted midpoint grows linearly in connectivity
//    with slope ~0.5, small intercept, and transition sharpness beta ~ N/2
void check_logistic_trend() {
    ContagionPlan plan = contagion_base();
    plan.kappas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    plan.seed = 778;
    plan.arms = {Arm::TRUE_MATRIX};
    const auto res = sweep_contagion(plan);
    const auto fits = fit_sweep(res.records);

    double sk = 0.0, st = 0.0, skk = 0.0, skt = 0.0, beta_mean = 0.0;
    const double m = static_cast<double>(plan.kappas.size());
    bool ok = true;
    for (double kappa : plan.kappas) {
        const double ts = fitted(fits, kappa, Arm::TRUE_MATRIX, ok);
        const double beta = fitted(fits, kappa, Arm::TRUE_MATRIX, ok, true);
        sk += kappa;
        st += ts;
        skk += kappa * kappa;
        skt += kappa * ts;
        beta_mean += beta;
    }
    const double slope = (m * skt - sk * st) / (m * skk - sk * sk);
    const double intercept = (st - slope * sk) / m;
    beta_mean /= m;
    const double beta_over_n = beta_mean / static_cast<double>(plan.n);
    const bool pass = ok && slope >= 0.35 && slope <= 0.65 && intercept >= 0.0 &&
                      intercept <= 0.1 && beta_over_n >= 0.3 && beta_over_n <= 0.7;
    report(7, pass,
           fmt("theta* on kappa: slope %.3f (band [0.35,0.65]), intercept %.3f (band [0,0.1]), "
               "mean beta/N %.3f (band [0.3,0.7])",
               slope, intercept, beta_over_n));
}

// 8: instrumented counters make the sparse iteration cost half the dense one
void check_operation_counters() {
    const std::size_t n = 200;
    RngStream rng(779, 0);
    const BalanceSheet bs = testhelp::dense_feasible_sheet(n, rng);
    const auto dense = ras(bs);
    const auto sparse = sras(bs, full_off_diagonal(n));
    const double per_dense =
        static_cast<double>(dense.macs) / static_cast<double>(dense.iterations);
    const double per_sparse =
        static_cast<double>(sparse.macs) / static_cast<double>(sparse.iterations);
    const double ratio = per_sparse / per_dense;
    report(8, std::abs(ratio - 0.5) <= 0.05,
           fmt("per-iteration cost at N=200: sparse %.0f, dense %.0f, ratio %.3f (band "
               "0.5 +/- 0.05)",
               per_sparse, per_dense, ratio));
}

// 9: randomized property suites, 10^3 cases each
void check_property_suites() {
    const std::size_t cases = 1000;
    const std::size_t t = testhelp::prop_cascade_monotone_theta(cases, 101);
    const std::size_t c = testhelp::prop_cascade_monotone_capital(cases, 202);
    const std::size_t k = testhelp::prop_kl_nonnegative(cases, 303);
    const std::size_t g = testhelp::prop_sras_gauge(cases, 404);
    const std::size_t d = testhelp::prop_determinism(cases, 505);
    report(9, t + c + k + g + d == 0,
           fmt("failures out of %zu cases each: theta-monotone %zu, capital-monotone %zu, "
               "kl %zu, gauge %zu, determinism %zu",
               cases, t, c, k, g, d));
}

}  // namespace

int main() {
    const auto res25 = run_feasibility(25);
    const auto res50 = run_feasibility(50);
    check_feasibility_law(res25.records, res50.records);
    check_solver_equivalence();
    check_oracle_equivalence();
    check_generator_exactness();
    check_contagion_ordering();
    check_logistic_trend();
    check_operation_counters();
    check_property_suites();
    std::printf("%d of 9 criteria failed\n", g_failures);
    return g_failures;
}
