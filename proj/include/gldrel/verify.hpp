#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gldrel/gld.hpp"
#include "gldrel/mcsim.hpp"
#include "gldrel/sensitivity.hpp"
#include "gldrel/specfun.hpp"
#include "gldrel/sumdist.hpp"
#include "gldrel/sysrel.hpp"

namespace gldrel {

/// One verification suite: a named bundle of checks with failure notes.
struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
};

struct VerifyOptions {
    std::size_t replications = 1'000'000;
    std::uint64_t seed = 42;
    int threads = 0;
};

namespace verify_detail {

inline void check(SuiteResult& s, bool ok, const std::string& what) {
    ++s.checks;
    if (!ok) {
        ++s.failures;
        s.notes.push_back(what);
    }
}

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline GldParams base_component() { return GldParams(2.0, 3.0, 0.5, 1.5, 2.2); }
inline GldParams base_switch() { return GldParams(4.0, 4.0, 0.005, 1.0, 1.0); }

// ---- suite 1: scalar special functions ---------------------------------

inline SuiteResult suite_special_functions() {
    SuiteResult s;
    s.name = "special-functions";
    // ln Gamma functional equation, exp form.
    for (double a = 0.5; a <= 50.0; a += 1.37) {
        const double lhs = std::exp(log_gamma(a + 1.0));
        const double rhs = a * std::exp(log_gamma(a));
        check(s, std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs),
              "log_gamma recurrence failed at a=" + num(a));
    }
    const double a_grid[] = {0.1, 0.5, 1.0, 2.0, 3.0, 7.5, 60.0};
    for (double a : a_grid) {
        check(s, reg_gamma_upper(a, 0.0) == 1.0, "Q(a,0) != 1 at a=" + num(a));
        check(s, reg_gamma_upper(a, 1e4) < 1e-12, "Q(a,x) tail not vanishing at a=" + num(a));
        // Recurrence Q(a+1,x) = Q(a,x) + x^a e^{-x} / Gamma(a+1).
        for (double x : {0.25, 1.0, 3.0, 10.0}) {
            const double lhs = reg_gamma_upper(a + 1.0, x);
            const double rhs = reg_gamma_upper(a, x) +
                               std::exp(a * std::log(x) - x - log_gamma(a + 1.0));
            check(s, std::fabs(lhs - rhs) <= 1e-12 * std::max(lhs, 1e-30),
                  "Q recurrence failed at a=" + num(a) + ", x=" + num(x));
        }
    }
    // Integer shapes: Q(a,x) equals the truncated Poisson sum.
    for (int a = 1; a <= 20; ++a) {
        for (double x : {0.5, 2.0, 7.0, 15.0}) {
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < a; ++k) {
                term *= x / k;
                sum += term;
            }
            const double ref = std::exp(-x) * sum;
            const double got = reg_gamma_upper(static_cast<double>(a), x);
            check(s, std::fabs(got - ref) <= 1e-12 * std::max(ref, 1e-30),
                  "integer-shape Q mismatch at a=" + num(a) + ", x=" + num(x));
        }
    }
    return s;
}

// ---- suite 2: sum distribution / MGF ------------------------------------

inline SuiteResult suite_sum_distribution() {
    SuiteResult s;
    s.name = "sum-distribution-mgf";
    const GldParams p = base_component();
    const auto [p1, p2] = mixture_weights(p);
    for (int n : {1, 2, 5, 10, 20}) {
        const GammaMixture m = sum_distribution(p, n);
        double wsum = 0.0, msum = 0.0;
        for (const auto& c : m.components) {
            wsum += c.weight;
            msum += c.weight * c.shape / c.rate;
        }
        check(s, std::fabs(wsum - 1.0) <= 1e-12, "weights not normalized at n=" + num(n));
        check(s, std::fabs(msum - n * mean(p)) <= 1e-12 * msum,
              "mixture mean mismatch at n=" + num(n));
    }
    for (int n : {1, 2, 5, 20}) {
        const GammaMixture m = sum_distribution(p, n);
        for (double t : {-1.0, -0.1, 0.1 * p.theta}) {
            const double lhs = mixture_mgf(m, t);
            const double base = p1 * std::pow(1.0 - t / p.theta, -p.alpha) +
                                p2 * std::pow(1.0 - t / p.theta, -p.beta);
            const double rhs = std::pow(base, n);
            check(s, std::fabs(lhs - rhs) <= 1e-12 * rhs,
                  "mgf power identity failed at n=" + num(n) + ", t=" + num(t));
        }
    }
    return s;
}

// ---- suite 3: closed form vs quadrature ---------------------------------

inline SuiteResult suite_closed_vs_quadrature() {
    SuiteResult s;
    s.name = "closed-vs-quadrature";
    const GldParams p = base_component();
    for (int n : {1, 2, 3, 5, 8, 10}) {
        SystemConfig cfg(n, p);
        for (int k = 1; k <= 10; ++k) {
            const double t = 10.0 * k;
            const double closed = reliability_perfect_closed(cfg, t);
            const double quad = reliability_perfect_quadrature(cfg, t);
            check(s, std::fabs(closed - quad) <= 1e-8,
                  "closed vs quadrature gap " + num(std::fabs(closed - quad)) +
                      " at n=" + num(n) + ", t=" + num(t));
        }
    }
    return s;
}

// ---- suite 4: special-case reductions -----------------------------------

inline SuiteResult suite_special_cases() {
    SuiteResult s;
    s.name = "special-case-reductions";
    for (int n : {1, 2, 5, 10}) {
        SystemConfig cfg(n, GldParams(1.0, 1.0, 0.5, 1.0, 1.0));
        for (double t : {0.0, 1.0, 5.0, 10.0, 40.0}) {
            const double a = reliability_perfect_closed(cfg, t);
            const double b = reliability_exponential(n, 0.5, t);
            check(s, std::fabs(a - b) <= 1e-12,
                  "exponential reduction gap at n=" + num(n) + ", t=" + num(t));
        }
    }
    SystemConfig lind(2, GldParams(2.0, 1.0, 1.0, 1.0, 1.0));
    for (double t : {0.5, 1.0, 2.0}) {
        const double a = reliability_lindley(2, 1.0, t);
        const double b = reliability_perfect_quadrature(lind, t);
        check(s, std::fabs(a - b) <= 1e-10, "Lindley closed vs quadrature gap at t=" + num(t));
    }
    check(s, lindley_series_discrepancy(1, 1.0, 1.0) > 0.05,
          "alternative Lindley series unexpectedly agrees at n=1");
    return s;
}

// ---- suite 5: MTTF sensitivity reference grids --------------------------

inline SuiteResult suite_mttf_sensitivity() {
    SuiteResult s;
    s.name = "mttf-sensitivity-reference";
    const GldParams p = base_component();
    const int ns[] = {2, 5, 10, 20};

    const double ref_alpha[] = {3.4932, 8.7329, 17.4658, 34.9317};
    const double ref_beta[] = {0.5068, 1.2671, 2.5342, 5.0683};
    for (int c = 0; c < 4; ++c) {
        SystemConfig cfg(ns[c], p);
        check(s, std::fabs(mttf_partial(cfg, ParamId::alpha) - ref_alpha[c]) <= 5e-4,
              "alpha sensitivity mismatch at n=" + num(ns[c]));
        check(s, std::fabs(mttf_partial(cfg, ParamId::beta) - ref_beta[c]) <= 5e-4,
              "beta sensitivity mismatch at n=" + num(ns[c]));
    }

    const double thetas[] = {0.3, 0.4, 0.5, 0.6, 0.7};
    const double ref_theta[5][4] = {{-43.3426, -108.357, -216.713, -433.426},
                                    {-23.9595, -59.8988, -119.798, -239.595},
                                    {-15.0662, -37.6654, -75.3309, -150.662},
                                    {-10.3115, -25.7787, -51.5573, -103.115},
                                    {-7.5094, -18.7734, -37.5468, -75.0937}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 4; ++c) {
            SystemConfig cfg(ns[c], GldParams(p.alpha, p.beta, thetas[r], p.gamma_w, p.eta));
            check(s, std::fabs(mttf_partial(cfg, ParamId::theta) - ref_theta[r][c]) <= 5e-3,
                  "theta sensitivity mismatch at theta=" + num(thetas[r]) +
                      ", n=" + num(ns[c]));
        }

    const double gammas[] = {1.2, 1.5, 1.8, 2.2, 2.5};
    const double ref_gamma[5][4] = {{-0.4332, -1.0829, -2.1659, -4.3318},
                                    {-0.2951, -0.7377, -1.4754, -2.9507},
                                    {-0.2138, -0.5346, -1.0692, -2.1385},
                                    {-0.1489, -0.3724, -0.7447, -1.4894},
                                    {-0.1179, -0.2947, -0.5894, -1.1787}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 4; ++c) {
            SystemConfig cfg(ns[c], GldParams(p.alpha, p.beta, p.theta, gammas[r], p.eta));
            check(s, std::fabs(mttf_partial(cfg, ParamId::gamma_w) - ref_gamma[r][c]) <= 5e-4,
                  "gamma sensitivity mismatch at gamma=" + num(gammas[r]) +
                      ", n=" + num(ns[c]));
        }

    const double etas[] = {1.5, 1.8, 2.2, 2.5, 3.0};
    const double ref_eta[5][4] = {{-0.428, -1.0699, -2.1399, -4.2798},
                                  {-0.3739, -0.9348, -1.8696, -3.7393},
                                  {-0.3068, -0.767, -1.534, -3.0679},
                                  {-0.2615, -0.6537, -1.3074, -2.6149},
                                  {-0.1969, -0.4922, -0.9844, -1.9687}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 4; ++c) {
            SystemConfig cfg(ns[c], GldParams(p.alpha, p.beta, p.theta, p.gamma_w, etas[r]));
            check(s, std::fabs(mttf_partial(cfg, ParamId::eta) - ref_eta[r][c]) <= 5e-4,
                  "eta sensitivity mismatch at eta=" + num(etas[r]) + ", n=" + num(ns[c]));
        }
    return s;
}

// ---- suite 6: hazard shapes ----------------------------------------------

inline std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
    return g;
}

inline SuiteResult suite_hazard_shapes() {
    SuiteResult s;
    s.name = "hazard-shapes";
    const auto grid = log_grid(1e-3, 50.0, 200);
    // Representative weight settings (theta, gamma, eta).
    const double wsets[][3] = {{0.5, 1.5, 2.2}, {1.0, 1.0, 1.0}, {0.8, 1.5, 1.3}};

    {   // Constant hazard for unit shapes.
        GldParams p(1.0, 1.0, 0.7, 1.0, 1.0);
        for (double t : {0.1, 1.0, 10.0})
            check(s, std::fabs(hazard(p, t) - 0.7) <= 1e-12, "unit-shape hazard not constant");
    }
    {   // Shape-2 closed form theta^2 t / (1 + theta t), any weights.
        GldParams p(2.0, 2.0, 0.5, 1.5, 2.2);
        for (double t : {0.01, 0.5, 2.0, 10.0}) {
            const double ref = 0.25 * t / (1.0 + 0.5 * t);
            check(s, std::fabs(hazard(p, t) - ref) <= 1e-12 * ref,
                  "shape-2 hazard mismatch at t=" + num(t));
        }
    }
    auto diffs_of = [&](const GldParams& p) {
        std::vector<double> h(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) h[i] = hazard(p, grid[i]);
        std::vector<double> d(grid.size() - 1);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) d[i] = h[i + 1] - h[i];
        return d;
    };
    for (const auto& w : wsets) {
        for (double a : {1.5, 2.0, 3.0})
            for (double b : {1.5, 2.0, 3.0}) {
                const auto d = diffs_of(GldParams(a, b, w[0], w[1], w[2]));
                const bool inc = std::all_of(d.begin(), d.end(),
                                             [](double x) { return x >= -1e-10; });
                check(s, inc, "hazard not increasing for shapes " + num(a) + "," + num(b));
            }
        for (double a : {0.3, 0.6})
            for (double b : {0.3, 0.6}) {
                const auto d = diffs_of(GldParams(a, b, w[0], w[1], w[2]));
                const bool dec = std::all_of(d.begin(), d.end(),
                                             [](double x) { return x <= 1e-10; });
                check(s, dec, "hazard not decreasing for shapes " + num(a) + "," + num(b));
            }
    }
    // Mixed shapes: exactly one sign change (bathtub).
    for (const auto& pr : {std::pair<double, double>{0.5, 3.0}, {3.0, 0.5}, {0.6, 1.5}}) {
        const auto d = diffs_of(GldParams(pr.first, pr.second, 1.0, 1.0, 1.0));
        int changes = 0;
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            if ((d[i] < 0.0) != (d[i + 1] < 0.0)) ++changes;
        check(s, changes == 1, "bathtub hazard sign changes = " + num(changes) +
                                   " for shapes " + num(pr.first) + "," + num(pr.second));
    }
    return s;
}

// ---- suite 7: Monte Carlo vs closed form (perfect switch) ----------------

inline SuiteResult suite_mc_perfect(const VerifyOptions& opt) {
    SuiteResult s;
    s.name = "mc-perfect-concordance";
    const GldParams p = base_component();
    SimConfig sim;
    sim.replications = opt.replications;
    sim.seed = opt.seed;
    sim.t_grid = {25.0, 50.0, 75.0, 100.0};
    const double reps = static_cast<double>(opt.replications);
    for (int n : {2, 5, 10, 20}) {
        SystemConfig cfg(n, p);
        const SimResult r = simulate_perfect(cfg, sim, opt.threads);
        for (const auto& e : r.estimates) {
            const double closed = reliability_perfect_closed(cfg, e.t);
            // Standard error of the estimator; the hypothesized-value form
            // keeps the check meaningful when no failures were observed.
            const double se_hyp = std::sqrt(closed * (1.0 - closed) / reps);
            const double se = std::max(e.std_error, se_hyp);
            check(s, std::fabs(closed - e.reliability) <= 4.0 * se,
                  "closed form outside 4 SE at n=" + num(n) + ", t=" + num(e.t));
        }
        const double mttf = mttf_perfect(cfg);
        check(s, std::fabs(r.mttf_value - mttf) <= 4.0 * r.mttf_std_error,
              "MTTF sample mean outside 4 SE at n=" + num(n));
    }
    return s;
}

// ---- suite 8: imperfect-switch lower bound -------------------------------

inline SuiteResult suite_mc_imperfect(const VerifyOptions& opt) {
    SuiteResult s;
    s.name = "mc-imperfect-bound";
    const GldParams p = base_component();
    const GldParams sw = base_switch();
    SimConfig sim;
    sim.replications = opt.replications;
    sim.seed = opt.seed + 1;
    sim.t_grid = {25.0, 50.0, 75.0, 100.0};
    const double reps = static_cast<double>(opt.replications);
    for (int n : {2, 10}) {
        SystemConfig cfg(n, p, ImperfectSwitch{sw});
        const SimResult r = simulate_imperfect(cfg, sim, opt.threads);
        SystemConfig perf(n, p);
        for (const auto& e : r.estimates) {
            const double lower = reliability_imperfect_lower(cfg, e.t);
            const double closed = reliability_perfect_closed(perf, e.t);
            const double se_hyp = std::sqrt(closed * (1.0 - closed) / reps);
            const double se = std::max(e.std_error, se_hyp);
            check(s, lower <= e.reliability + 4.0 * se,
                  "lower bound above MC estimate + 4 SE at n=" + num(n) + ", t=" + num(e.t));
            check(s, e.reliability <= closed + 4.0 * se,
                  "MC estimate above perfect-switch value + 4 SE at n=" + num(n) +
                      ", t=" + num(e.t));
        }
    }
    // A vanishing switch failure rate recovers the perfect-switch value.
    SystemConfig near_perfect(5, p, ImperfectSwitch{GldParams(4.0, 4.0, 1e-12, 1.0, 1.0)});
    SystemConfig perf(5, p);
    for (double t : {25.0, 50.0, 100.0})
        check(s, std::fabs(reliability_imperfect_lower(near_perfect, t) -
                           reliability_perfect_closed(perf, t)) <= 1e-9,
              "near-perfect switch does not recover perfect value at t=" + num(t));
    return s;
}

} // namespace verify_detail

/// Run the full cross-check battery. Each suite is independent; the result
/// list preserves execution order.
inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt = {}) {
    std::vector<SuiteResult> out;
    out.push_back(verify_detail::suite_special_functions());
    out.push_back(verify_detail::suite_sum_distribution());
    out.push_back(verify_detail::suite_closed_vs_quadrature());
    out.push_back(verify_detail::suite_special_cases());
    out.push_back(verify_detail::suite_mttf_sensitivity());
    out.push_back(verify_detail::suite_hazard_shapes());
    out.push_back(verify_detail::suite_mc_perfect(opt));
    out.push_back(verify_detail::suite_mc_imperfect(opt));
    return out;
}

} // namespace gldrel
