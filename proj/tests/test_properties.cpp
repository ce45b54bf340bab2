// Randomized property checks over the parameter space, driven by a fixed
// seed so failures are reproducible.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gldrel/gld.hpp"
#include "gldrel/rng.hpp"
#include "gldrel/sensitivity.hpp"
#include "gldrel/sumdist.hpp"
#include "gldrel/sysrel.hpp"

using namespace gldrel;

namespace {

double uniform_in(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
}

GldParams random_params(Rng& rng, bool integer_shapes) {
    double a, b;
    if (integer_shapes) {
        a = 1.0 + std::floor(6.0 * rng.uniform());
        b = 1.0 + std::floor(6.0 * rng.uniform());
    } else {
        a = uniform_in(rng, 0.3, 6.0);
        b = uniform_in(rng, 0.3, 6.0);
    }
    return GldParams(a, b, uniform_in(rng, 0.1, 3.0), uniform_in(rng, 1.0, 4.0),
                     uniform_in(rng, 1.0, 3.0));
}

} // namespace

TEST_CASE("random parameters: weights, survival and hazard identities") {
    Rng rng(8675309);
    for (int trial = 0; trial < 300; ++trial) {
        const GldParams p = random_params(rng, false);
        const auto [p1, p2] = mixture_weights(p);
        REQUIRE(p1 > 0.0);
        REQUIRE(p2 > 0.0);
        REQUIRE(p1 + p2 == Catch::Approx(1.0).epsilon(1e-14));

        REQUIRE(survival(p, 0.0) == 1.0);
        const double t1 = uniform_in(rng, 0.0, 10.0 / p.theta);
        const double t2 = t1 + uniform_in(rng, 0.0, 10.0 / p.theta);
        REQUIRE(survival(p, t2) <= survival(p, t1) + 1e-15);

        const double t = uniform_in(rng, 0.05, 20.0 / p.theta);
        const double s = survival(p, t);
        if (s > 1e-300) {
            REQUIRE(hazard(p, t) * s == Catch::Approx(pdf(p, t)).epsilon(1e-12));
        }
        REQUIRE(pdf(p, t) >= 0.0);
    }
}

TEST_CASE("random parameters: mixture mean and mgf identities") {
    Rng rng(271828);
    for (int trial = 0; trial < 100; ++trial) {
        const GldParams p = random_params(rng, false);
        const int n = 1 + static_cast<int>(12.0 * rng.uniform());
        const GammaMixture m = sum_distribution(p, n);

        double wsum = 0.0, mu = 0.0;
        for (const auto& c : m.components) {
            wsum += c.weight;
            mu += c.weight * c.shape / c.rate;
        }
        REQUIRE(wsum == Catch::Approx(1.0).epsilon(1e-12));
        REQUIRE(mu == Catch::Approx(n * mean(p)).epsilon(1e-12));

        const auto [p1, p2] = mixture_weights(p);
        const double t = -uniform_in(rng, 0.01, 2.0);
        const double base = p1 * std::pow(1.0 - t / p.theta, -p.alpha) +
                            p2 * std::pow(1.0 - t / p.theta, -p.beta);
        REQUIRE(mixture_mgf(m, t) == Catch::Approx(std::pow(base, n)).epsilon(1e-12));
    }
}

TEST_CASE("random integer shapes: closed form equals the sum-law survival") {
    Rng rng(314159);
    for (int trial = 0; trial < 60; ++trial) {
        const GldParams p = random_params(rng, true);
        const int n = 1 + static_cast<int>(10.0 * rng.uniform());
        const GammaMixture m = sum_distribution(p, n);
        SystemConfig cfg(n, p);
        for (int k = 0; k < 3; ++k) {
            const double t = uniform_in(rng, 0.0, 3.0 * n / p.theta);
            const double closed = reliability_perfect_closed(cfg, t);
            REQUIRE(closed >= 0.0);
            REQUIRE(closed <= 1.0);
            REQUIRE(closed == Catch::Approx(mixture_survival(m, t)).epsilon(1e-11).margin(1e-300));
        }
    }
}

TEST_CASE("random integer shapes: automatic routing is consistent") {
    Rng rng(998877);
    for (int trial = 0; trial < 20; ++trial) {
        const GldParams pi = random_params(rng, true);
        SystemConfig cfg(2 + static_cast<int>(4.0 * rng.uniform()), pi);
        const double t = uniform_in(rng, 0.5, 2.0 * cfg.n / pi.theta);
        REQUIRE(reliability_perfect(cfg, t) == reliability_perfect_closed(cfg, t));
    }
    // A non-integer shape must take the quadrature route and stay close to
    // the neighbouring integer-shape closed form.
    const GldParams p(2.0 + 1e-9, 3.0, 0.5, 1.5, 2.2);
    SystemConfig cfg(3, p);
    const double via_router = reliability_perfect(cfg, 10.0);
    SystemConfig icfg(3, GldParams(2.0, 3.0, 0.5, 1.5, 2.2));
    REQUIRE(via_router == Catch::Approx(reliability_perfect_closed(icfg, 10.0)).epsilon(1e-6));
}

TEST_CASE("random parameters: mttf linearity and homogeneity") {
    Rng rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        const GldParams p = random_params(rng, false);
        const double m1 = mttf_perfect(SystemConfig(1, p));
        const int n = 2 + static_cast<int>(30.0 * rng.uniform());
        SystemConfig cfg(n, p);
        REQUIRE(mttf_perfect(cfg) == Catch::Approx(n * m1).epsilon(1e-15));
        const double euler = p.alpha * mttf_partial(cfg, ParamId::alpha) +
                             p.beta * mttf_partial(cfg, ParamId::beta);
        REQUIRE(euler == Catch::Approx(mttf_perfect(cfg)).epsilon(1e-12));
    }
}

TEST_CASE("accuracy knob validation") {
    REQUIRE_THROWS_AS(reg_gamma_upper(2.0, 1.0, Accuracy{0.0, 100}), std::domain_error);
    REQUIRE_THROWS_AS(reg_gamma_upper(2.0, 1.0, Accuracy{1e-12, 0}), std::domain_error);
    REQUIRE_NOTHROW(reg_gamma_upper(2.0, 1.0, Accuracy{1e-10, 50}));
}
