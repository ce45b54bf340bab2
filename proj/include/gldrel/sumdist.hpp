#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gldrel/errors.hpp"
#include "gldrel/gld.hpp"
#include "gldrel/specfun.hpp"

namespace gldrel {

struct GammaComponent {
    double weight;
    double shape;
    double rate;
};

/// Finite mixture of gamma laws. Components are kept in construction order;
/// weights below 1e-16 are retained so results are bit-stable across n.
struct GammaMixture {
    std::vector<GammaComponent> components;

    std::size_t n_terms() const { return components.size(); }

    double min_rate() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& c : components) m = std::min(m, c.rate);
        return m;
    }
};

/// Law of S_n = X_1 + ... + X_n for n iid lifetimes from p: a binomial
/// mixture of n+1 gamma components where component i carries weight
/// C(n,i) p1^i p2^{n-i}, shape i*alpha + (n-i)*beta, and the common rate
/// theta. Weights are formed in log space (log-binomial via ln Gamma).
inline GammaMixture sum_distribution(const GldParams& p, int n) {
    if (n < 1 || n > 10'000)
        throw std::domain_error("sum_distribution: n must be in [1, 10000]");
    const auto [p1, p2] = mixture_weights(p);
    const double lp1 = std::log(p1);
    const double lp2 = std::log(p2);
    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);

    GammaMixture m;
    m.components.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double lw = lgn - std::lgamma(static_cast<double>(i) + 1.0) -
                          std::lgamma(static_cast<double>(n - i) + 1.0) +
                          static_cast<double>(i) * lp1 + static_cast<double>(n - i) * lp2;
        const double shape = static_cast<double>(i) * p.alpha +
                             static_cast<double>(n - i) * p.beta;
        m.components.push_back({std::exp(lw), shape, p.theta});
    }
    return m;
}

/// Mixture density at x, each gamma term evaluated in log space and the
/// terms combined through a log-sum-exp.
inline double mixture_pdf(const GammaMixture& m, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("mixture_pdf: x must be non-negative");
    if (x == 0.0) {
        double v = 0.0;
        for (const auto& c : m.components)
            v += c.weight * detail::gamma_pdf_at_zero(c.shape, c.rate);
        return v;
    }
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(m.components.size());
    for (const auto& c : m.components) {
        const double l = (c.weight > 0.0 ? std::log(c.weight)
                                         : -std::numeric_limits<double>::infinity()) +
                         detail::log_gamma_pdf(c.shape, c.rate, x);
        logs.push_back(l);
        hi = std::max(hi, l);
    }
    if (hi == -std::numeric_limits<double>::infinity()) return 0.0;
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - hi);
    return std::exp(hi) * acc;
}

/// Mixture cdf: sum of weight * (1 - Q(shape, rate x)) over components.
inline double mixture_cdf(const GammaMixture& m, double x, const Accuracy& acc = {}) {
    if (!(x >= 0.0))
        throw std::domain_error("mixture_cdf: x must be non-negative");
    double v = 0.0;
    for (const auto& c : m.components)
        v += c.weight * (1.0 - reg_gamma_upper(c.shape, c.rate * x, acc));
    return v;
}

/// Mixture survival 1 - cdf, summed directly over the Q terms (no
/// cancellation in the deep right tail).
inline double mixture_survival(const GammaMixture& m, double x, const Accuracy& acc = {}) {
    if (!(x >= 0.0))
        throw std::domain_error("mixture_survival: x must be non-negative");
    double v = 0.0;
    for (const auto& c : m.components)
        v += c.weight * reg_gamma_upper(c.shape, c.rate * x, acc);
    return v;
}

/// Moment generating function sum of weight * (1 - t/rate)^{-shape};
/// defined for t below the smallest rate.
inline double mixture_mgf(const GammaMixture& m, double t) {
    if (!(t < m.min_rate()))
        throw std::domain_error("mixture_mgf: diverges for t >= min component rate");
    double v = 0.0;
    for (const auto& c : m.components)
        v += c.weight * std::exp(-c.shape * std::log1p(-t / c.rate));
    return v;
}

} // namespace gldrel
