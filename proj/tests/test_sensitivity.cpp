#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gldrel/sensitivity.hpp"
#include "gldrel/sysrel.hpp"

using namespace gldrel;

namespace {

GldParams reference_component() { return GldParams(2.0, 3.0, 0.5, 1.5, 2.2); }

double mttf_of(const GldParams& p, int n) { return mttf_perfect(SystemConfig(n, p)); }

GldParams tweak(const GldParams& p, ParamId id, double v) {
    GldParams q = p;
    switch (id) {
        case ParamId::alpha: q.alpha = v; break;
        case ParamId::beta: q.beta = v; break;
        case ParamId::theta: q.theta = v; break;
        case ParamId::gamma_w: q.gamma_w = v; break;
        case ParamId::eta: q.eta = v; break;
    }
    return GldParams(q.alpha, q.beta, q.theta, q.gamma_w, q.eta);
}

double param_of(const GldParams& p, ParamId id) {
    switch (id) {
        case ParamId::alpha: return p.alpha;
        case ParamId::beta: return p.beta;
        case ParamId::theta: return p.theta;
        case ParamId::gamma_w: return p.gamma_w;
        case ParamId::eta: return p.eta;
    }
    return 0.0;
}

constexpr ParamId kAllParams[] = {ParamId::alpha, ParamId::beta, ParamId::theta,
                                  ParamId::gamma_w, ParamId::eta};

} // namespace

TEST_CASE("MTTF partials match the reference grids") {
    const GldParams p = reference_component();
    const int ns[] = {2, 5, 10, 20};

    SECTION("alpha") {
        const double ref[] = {3.4932, 8.7329, 17.4658, 34.9317};
        for (int c = 0; c < 4; ++c)
            REQUIRE(mttf_partial(SystemConfig(ns[c], p), ParamId::alpha) ==
                    Catch::Approx(ref[c]).margin(5e-4));
    }
    SECTION("beta") {
        const double ref[] = {0.5068, 1.2671, 2.5342, 5.0683};
        for (int c = 0; c < 4; ++c)
            REQUIRE(mttf_partial(SystemConfig(ns[c], p), ParamId::beta) ==
                    Catch::Approx(ref[c]).margin(5e-4));
    }
    SECTION("theta") {
        const double thetas[] = {0.3, 0.4, 0.5, 0.6, 0.7};
        const double ref[5][4] = {{-43.3426, -108.357, -216.713, -433.426},
                                  {-23.9595, -59.8988, -119.798, -239.595},
                                  {-15.0662, -37.6654, -75.3309, -150.662},
                                  {-10.3115, -25.7787, -51.5573, -103.115},
                                  {-7.5094, -18.7734, -37.5468, -75.0937}};
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 4; ++c) {
                const GldParams q = tweak(p, ParamId::theta, thetas[r]);
                REQUIRE(mttf_partial(SystemConfig(ns[c], q), ParamId::theta) ==
                        Catch::Approx(ref[r][c]).margin(5e-3));
            }
    }
    SECTION("gamma") {
        const double gammas[] = {1.2, 1.5, 1.8, 2.2, 2.5};
        const double ref[5][4] = {{-0.4332, -1.0829, -2.1659, -4.3318},
                                  {-0.2951, -0.7377, -1.4754, -2.9507},
                                  {-0.2138, -0.5346, -1.0692, -2.1385},
                                  {-0.1489, -0.3724, -0.7447, -1.4894},
                                  {-0.1179, -0.2947, -0.5894, -1.1787}};
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 4; ++c) {
                const GldParams q = tweak(p, ParamId::gamma_w, gammas[r]);
                REQUIRE(mttf_partial(SystemConfig(ns[c], q), ParamId::gamma_w) ==
                        Catch::Approx(ref[r][c]).margin(5e-4));
            }
    }
    SECTION("eta") {
        const double etas[] = {1.5, 1.8, 2.2, 2.5, 3.0};
        const double ref[5][4] = {{-0.428, -1.0699, -2.1399, -4.2798},
                                  {-0.3739, -0.9348, -1.8696, -3.7393},
                                  {-0.3068, -0.767, -1.534, -3.0679},
                                  {-0.2615, -0.6537, -1.3074, -2.6149},
                                  {-0.1969, -0.4922, -0.9844, -1.9687}};
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 4; ++c) {
                const GldParams q = tweak(p, ParamId::eta, etas[r]);
                REQUIRE(mttf_partial(SystemConfig(ns[c], q), ParamId::eta) ==
                        Catch::Approx(ref[r][c]).margin(5e-4));
            }
    }
}

TEST_CASE("analytic partials match central differences") {
    const GldParams base = reference_component();
    for (ParamId id : kAllParams) {
        const double v0 = param_of(base, id);
        for (double scale : {0.92, 1.0, 1.08}) {
            const GldParams p = tweak(base, id, v0 * scale);
            for (int n : {2, 5, 7}) {
                const double v = param_of(p, id);
                const double h = 1e-6 * std::max(1.0, std::fabs(v));
                const double fd = (mttf_of(tweak(p, id, v + h), n) -
                                   mttf_of(tweak(p, id, v - h), n)) /
                                  (2.0 * h);
                const double an = mttf_partial(SystemConfig(n, p), id);
                REQUIRE(an == Catch::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("structure of the MTTF partials") {
    const GldParams p = reference_component();

    SECTION("exact linearity in n") {
        for (ParamId id : kAllParams) {
            const double at2 = mttf_partial(SystemConfig(2, p), id);
            for (int n : {5, 10, 20})
                REQUIRE(mttf_partial(SystemConfig(n, p), id) ==
                        Catch::Approx(at2 * n / 2.0).epsilon(1e-12));
        }
    }
    SECTION("sign pattern at the reference point") {
        SystemConfig cfg(2, p);
        REQUIRE(mttf_partial(cfg, ParamId::alpha) > 0.0);
        REQUIRE(mttf_partial(cfg, ParamId::beta) > 0.0);
        REQUIRE(mttf_partial(cfg, ParamId::theta) < 0.0);
        REQUIRE(mttf_partial(cfg, ParamId::gamma_w) < 0.0); // alpha < beta
        REQUIRE(mttf_partial(cfg, ParamId::eta) < 0.0);     // theta < 1, beta > alpha
    }
    SECTION("homogeneity in the shape pair") {
        for (int n : {1, 2, 10}) {
            SystemConfig cfg(n, p);
            const double lhs = p.alpha * mttf_partial(cfg, ParamId::alpha) +
                               p.beta * mttf_partial(cfg, ParamId::beta);
            REQUIRE(lhs == Catch::Approx(mttf_perfect(cfg)).epsilon(1e-12));
        }
    }
    SECTION("alpha and beta partials do not depend on the shape values") {
        for (double a : {1.0, 2.0, 3.0, 4.0}) {
            const GldParams q = tweak(p, ParamId::alpha, a);
            REQUIRE(mttf_partial(SystemConfig(2, q), ParamId::alpha) ==
                    mttf_partial(SystemConfig(2, p), ParamId::alpha));
        }
    }
    SECTION("requires a perfect switch") {
        SystemConfig imp(2, p, ImperfectSwitch{GldParams(4.0, 4.0, 0.005, 1.0, 1.0)});
        REQUIRE_THROWS_AS(mttf_partial(imp, ParamId::alpha), std::domain_error);
    }
}

TEST_CASE("reliability partial derivatives") {
    const GldParams p = reference_component();

    SECTION("zero at t = 0") {
        SystemConfig cfg(2, p);
        for (ParamId id : kAllParams) {
            const auto d = reliability_partial(cfg, 0.0, id, 1e-5);
            REQUIRE(d.value == 0.0);
        }
    }
    SECTION("theta dominates at the reference point") {
        SystemConfig cfg(2, p);
        const double dth = reliability_partial(cfg, 10.0, ParamId::theta, 1e-5).value;
        REQUIRE(dth < 0.0);
        REQUIRE(dth == Catch::Approx(-1.316176609).epsilon(1e-2));
        for (ParamId id : {ParamId::alpha, ParamId::beta, ParamId::gamma_w, ParamId::eta})
            REQUIRE(std::fabs(dth) >
                    std::fabs(reliability_partial(cfg, 10.0, id, 1e-5).value));
    }
    SECTION("shape perturbations run through the quadrature path") {
        SystemConfig cfg(3, p);
        const auto d = reliability_partial(cfg, 10.0, ParamId::alpha, 1e-5);
        REQUIRE(std::isfinite(d.value));
        REQUIRE(d.value == Catch::Approx(0.405121425172).epsilon(1e-3));
        REQUIRE_FALSE(d.one_sided);
    }
    SECTION("boundary parameters fall back to one-sided differences") {
        SystemConfig cfg(2, GldParams(2.0, 3.0, 0.5, 1.0, 1.0));
        const auto dg = reliability_partial(cfg, 10.0, ParamId::gamma_w, 1e-5);
        REQUIRE(dg.one_sided);
        const auto de = reliability_partial(cfg, 10.0, ParamId::eta, 1e-5);
        REQUIRE(de.one_sided);
    }
    SECTION("validation") {
        SystemConfig cfg(2, p);
        REQUIRE_THROWS_AS(reliability_partial(cfg, -1.0, ParamId::theta, 1e-5),
                          std::domain_error);
        REQUIRE_THROWS_AS(reliability_partial(cfg, 1.0, ParamId::theta, 0.0),
                          std::domain_error);
    }
}

TEST_CASE("sensitivity tables") {
    const GldParams p = reference_component();
    SystemConfig base(2, p);

    SECTION("theta grid reproduces the reference table") {
        const auto tab = sensitivity_table(SensTarget::mttf, ParamId::theta,
                                           {0.3, 0.4, 0.5, 0.6, 0.7}, {2, 5, 10, 20}, base);
        REQUIRE(tab.method == SensMethod::analytic);
        const double ref[5][4] = {{-43.3426, -108.357, -216.713, -433.426},
                                  {-23.9595, -59.8988, -119.798, -239.595},
                                  {-15.0662, -37.6654, -75.3309, -150.662},
                                  {-10.3115, -25.7787, -51.5573, -103.115},
                                  {-7.5094, -18.7734, -37.5468, -75.0937}};
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                REQUIRE(tab.at(r, c) == Catch::Approx(ref[r][c]).margin(5e-3));
    }
    SECTION("eta grid: every entry negative and linear in n") {
        const auto tab = sensitivity_table(SensTarget::mttf, ParamId::eta,
                                           {1.5, 1.8, 2.2, 2.5, 3.0}, {2, 5, 10, 20}, base);
        for (std::size_t r = 0; r < tab.param_values.size(); ++r)
            for (std::size_t c = 0; c < tab.n_values.size(); ++c) {
                REQUIRE(tab.at(r, c) < 0.0);
                REQUIRE(tab.at(r, c) ==
                        Catch::Approx(tab.at(r, 0) * tab.n_values[c] / 2.0).epsilon(1e-12));
            }
    }
    SECTION("alpha rows are constant") {
        const auto tab = sensitivity_table(SensTarget::mttf, ParamId::alpha,
                                           {1.0, 2.0, 3.0, 5.0}, {2}, base);
        for (std::size_t r = 1; r < tab.param_values.size(); ++r)
            REQUIRE(tab.at(r, 0) == tab.at(0, 0));
    }
    SECTION("reliability target uses finite differences") {
        const auto tab = sensitivity_table(SensTarget::reliability, ParamId::theta,
                                           {0.4, 0.5}, {2}, base, 10.0);
        REQUIRE(tab.method == SensMethod::finite_difference);
        REQUIRE(tab.values.size() == 2);
        for (double v : tab.values) {
            REQUIRE(std::isfinite(v));
            REQUIRE(v < 0.0);
        }
    }
    SECTION("empty grids are rejected") {
        REQUIRE_THROWS_AS(
            sensitivity_table(SensTarget::mttf, ParamId::theta, {}, {2}, base),
            std::domain_error);
        REQUIRE_THROWS_AS(
            sensitivity_table(SensTarget::mttf, ParamId::theta, {0.5}, {}, base),
            std::domain_error);
    }
}
