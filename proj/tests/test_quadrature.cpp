#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gldrel/quadrature.hpp"

using gldrel::integrate_adaptive;

TEST_CASE("polynomial and trigonometric integrals") {
    auto sq = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    REQUIRE(sq.converged);
    REQUIRE(sq.value == Catch::Approx(1.0 / 3.0).epsilon(1e-14));

    auto s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                3.14159265358979323846, 1e-12);
    REQUIRE(s.converged);
    REQUIRE(s.value == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gaussian integral over a wide interval") {
    auto g = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-12);
    REQUIRE(g.converged);
    REQUIRE(g.value == Catch::Approx(1.77245385090551602729).epsilon(1e-12));
}

TEST_CASE("degenerate and capped cases") {
    auto z = integrate_adaptive([](double x) { return x; }, 2.0, 2.0, 1e-12);
    REQUIRE(z.converged);
    REQUIRE(z.value == 0.0);

    // Highly oscillatory integrand with a tiny budget: must report failure.
    auto osc = integrate_adaptive([](double x) { return std::sin(1000.0 * x); }, 0.0, 100.0,
                                  1e-14, 3000);
    REQUIRE_FALSE(osc.converged);
    REQUIRE(osc.evals <= 3000);
}

TEST_CASE("integrable endpoint singularity") {
    // int_0^1 x^{-1/2} dx = 2; endpoint is never evaluated by the open rule.
    auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9,
                                2'000'000);
    REQUIRE(r.value == Catch::Approx(2.0).margin(1e-7));
}
