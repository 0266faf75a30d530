#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ibnet/contagion.hpp"
#include "ibnet/errors.hpp"
#include "ibnet/netgen.hpp"
#include "ibnet/rng.hpp"
#include "ibnet/types.hpp"

using namespace ibnet;

TEST_CASE("hand-traced three-bank cascade") {
    // bank 1 holds 0.4 against bank 0; bank 2 holds 0.1 against 0 and 0.25
    // against 1. With theta=1 and capital (0.1, 0.3, 0.3), bank 0's failure
    // kills bank 1 in round one and bank 2 only once bank 1's loss lands.
    Matrix x(3);
    x(1, 0) = 0.4;
    x(2, 0) = 0.1;
    x(2, 1) = 0.25;
    StressConfig cfg;
    cfg.initial_capital = {0.1, 0.3, 0.3};
    cfg.theta = 1.0;
    const CascadeOutcome out = cascade(x, cfg, 0);
    CHECK(out.failed == std::vector<std::size_t>{0, 1, 2});
    CHECK(out.rounds == 2);
    CHECK(out.fraction == doctest::Approx(1.0));

    // at theta=0.5 bank 1 absorbs 0.2 < 0.3 and nothing propagates
    cfg.theta = 0.5;
    const CascadeOutcome mild = cascade(x, cfg, 0);
    CHECK(mild.failed == std::vector<std::size_t>{0});
    CHECK(mild.rounds == 0);
    CHECK(mild.fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("zero loss rate never propagates") {
    RngStream rng(4, 0);
    const GroundTruth gt = random_ground_truth(10, 0.2, 10.0, rng);
    const auto out = cascade(gt.exposures, StressConfig::homogeneous(10, 0.01, 0.0), 3);
    CHECK(out.failed == std::vector<std::size_t>{3});
    CHECK(out.rounds == 0);
}

TEST_CASE("cascade validates its inputs") {
    Matrix x(3);
    StressConfig bad_capital;
    bad_capital.initial_capital = {0.1, 0.1};
    bad_capital.theta = 0.5;
    CHECK_THROWS_AS(cascade(x, bad_capital, 0), DimensionError);

    StressConfig cfg = StressConfig::homogeneous(3, 0.1, 0.5);
    CHECK_THROWS_AS(cascade(x, cfg, 5), DimensionError);
    cfg.theta = 1.5;
    CHECK_THROWS_AS(cascade(x, cfg, 0), DimensionError);
}

TEST_CASE("mean default fraction averages single-origin shocks") {
    RngStream rng(6, 1);
    const GroundTruth gt = random_ground_truth(12, 0.25, 12.0, rng);
    const StressConfig cfg = StressConfig::homogeneous(12, 0.01, 0.6);
    double acc = 0.0;
    for (std::size_t o = 0; o < 12; ++o) acc += cascade(gt.exposures, cfg, o).fraction;
    CHECK(default_fraction(gt.exposures, cfg) == doctest::Approx(acc / 12.0).epsilon(1e-15));
}

TEST_CASE("logistic fit recovers exact parameters") {
    std::vector<double> thetas, xis;
    const double ts = 0.3, beta = 100.0;
    for (int k = 0; k <= 50; ++k) {
        const double t = static_cast<double>(k) / 50.0;
        thetas.push_back(t);
        xis.push_back(1.0 / (1.0 + std::exp(-beta * (t - ts))));
    }
    const LogisticFit fit = fit_logistic(thetas, xis);
    CHECK(fit.theta_star == doctest::Approx(ts).epsilon(1e-3));
    CHECK(fit.beta == doctest::Approx(beta).epsilon(1e-3));
    CHECK(fit.residual <= 1e-6);
}

TEST_CASE("logistic fit tolerates noise") {
    std::vector<double> thetas, xis;
    const double ts = 0.55, beta = 25.0;
    RngStream rng(8, 0);
    for (int k = 0; k <= 50; ++k) {
        const double t = static_cast<double>(k) / 50.0;
        thetas.push_back(t);
        const double noise = 0.01 * (2.0 * rng.uniform01() - 1.0);
        xis.push_back(1.0 / (1.0 + std::exp(-beta * (t - ts))) + noise);
    }
    const LogisticFit fit = fit_logistic(thetas, xis);
    CHECK(fit.theta_star == doctest::Approx(ts).epsilon(0.05));
    CHECK(fit.beta == doctest::Approx(beta).epsilon(0.05));
}

TEST_CASE("degenerate series are rejected") {
    std::vector<double> thetas, flat;
    for (int k = 0; k <= 20; ++k) {
        thetas.push_back(static_cast<double>(k) / 20.0);
        flat.push_back(0.25);
    }
    CHECK_THROWS_AS(fit_logistic(thetas, flat), FitDegenerateError);
    // too few points to identify two parameters is a usage error
    CHECK_THROWS_AS(fit_logistic({0.1, 0.2}, {0.0, 1.0}), DimensionError);
}

TEST_CASE("fit is invariant under shifting the loss grid") {
    std::vector<double> thetas, xis, shifted;
    const double ts = 0.4, beta = 30.0, delta = 0.17;
    for (int k = 0; k <= 40; ++k) {
        const double t = static_cast<double>(k) / 40.0;
        thetas.push_back(t);
        shifted.push_back(t + delta);
        xis.push_back(1.0 / (1.0 + std::exp(-beta * (t - ts))));
    }
    const LogisticFit base = fit_logistic(thetas, xis);
    const LogisticFit moved = fit_logistic(shifted, xis);
    CHECK(moved.theta_star - base.theta_star == doctest::Approx(delta).epsilon(1e-6));
    CHECK(moved.beta == doctest::Approx(base.beta).epsilon(1e-6));
}
