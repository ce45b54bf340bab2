#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace gldrel {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;   // estimated bound on |value - exact|
    std::size_t evals = 0;
    bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1] (positive abscissae).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

/// One Gauss-Kronrod 7-15 panel with the QUADPACK-style error estimate.
template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    double resk = kKronrodWeights[7] * fc;
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[j] + fv[14 - j];
        resk += kKronrodWeights[j] * sum;
        resabs += kKronrodWeights[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    }
    double resg = kGaussWeights[3] * fc;
    for (int j = 0; j < 3; ++j)
        resg += kGaussWeights[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);

    const double mean = resk * 0.5;
    double resasc = kKronrodWeights[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] *
                  (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

    const double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    return {value, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a,b] to an
/// absolute tolerance. The worst panel (largest error estimate) is bisected
/// until the summed error estimate meets abs_tol or max_evals integrand
/// evaluations have been spent. Deterministic for a given integrand.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                              std::size_t max_evals = 1'000'000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    struct Panel {
        double a, b, value, error;
    };
    // Ordered by error estimate; sequence number breaks ties deterministically.
    using Entry = std::pair<double, std::size_t>;
    std::vector<Panel> panels;
    std::priority_queue<Entry> worst;

    auto push = [&](double lo, double hi) {
        const auto est = detail::gk15(f, lo, hi);
        out.evals += 15;
        panels.push_back({lo, hi, est.value, est.error});
        worst.emplace(est.error, panels.size() - 1);
    };

    push(a, b);
    double total_err = panels[0].error;
    double total_val = panels[0].value;

    while (total_err > abs_tol && out.evals + 30 <= max_evals) {
        if (worst.empty()) break;
        const auto [err, idx] = worst.top();
        worst.pop();
        if (err != panels[idx].error) continue; // stale entry
        if (err <= 0.0) break;                  // nothing left to refine
        const Panel p = panels[idx];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) break;    // interval at double resolution

        const auto left = detail::gk15(f, p.a, mid);
        const auto right = detail::gk15(f, mid, p.b);
        out.evals += 30;

        total_val += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;

        panels[idx] = {p.a, mid, left.value, left.error};
        worst.emplace(left.error, idx);
        panels.push_back({mid, p.b, right.value, right.error});
        worst.emplace(right.error, panels.size() - 1);
    }

    // Recompute the totals pairwise to shed accumulated update noise.
    total_val = 0.0;
    total_err = 0.0;
    for (const auto& p : panels) {
        total_val += p.value;
        total_err += p.error;
    }

    out.value = total_val;
    out.abs_error = total_err;
    out.converged = total_err <= abs_tol;
    return out;
}

} // namespace gldrel
