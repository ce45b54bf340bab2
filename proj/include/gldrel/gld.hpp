#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gldrel/errors.hpp"
#include "gldrel/rng.hpp"
#include "gldrel/specfun.hpp"

namespace gldrel {

/// Parameters of the five-parameter generalized Lindley lifetime law: a
/// two-component convex mixture of gamma densities with shared rate theta,
/// shapes alpha and beta, and mixing weights driven by gamma_w and eta.
/// Rate (not scale) parameterization throughout.
struct GldParams {
    double alpha;
    double beta;
    double theta;
    double gamma_w;
    double eta;

    GldParams(double alpha_, double beta_, double theta_, double gamma_w_, double eta_)
        : alpha(alpha_), beta(beta_), theta(theta_), gamma_w(gamma_w_), eta(eta_) {
        auto ok = [](double v) { return std::isfinite(v); };
        if (!ok(alpha) || !ok(beta) || !ok(theta) || !ok(gamma_w) || !ok(eta))
            throw std::domain_error("GldParams: parameters must be finite");
        if (!(alpha > 0.0) || !(beta > 0.0) || !(theta > 0.0))
            throw std::domain_error("GldParams: alpha, beta, theta must be positive");
        if (!(gamma_w >= 1.0) || !(eta >= 1.0))
            throw std::domain_error("GldParams: gamma and eta must be >= 1");
    }
};

enum class SpecialKind { exponential, lindley, general };

/// Result of exact special-case routing; theta is the surviving parameter
/// for the exponential and Lindley reductions.
struct SpecialCase {
    SpecialKind kind;
    double theta;
};

/// Mixture weights (p1, p2) with p1 = gamma / (gamma + theta^eta).
inline std::pair<double, double> mixture_weights(const GldParams& p) {
    const double te = std::pow(p.theta, p.eta);
    const double denom = p.gamma_w + te;
    return {p.gamma_w / denom, te / denom};
}

namespace detail {

/// Log of the gamma density with the given shape at rate theta; t > 0.
inline double log_gamma_pdf(double shape, double theta, double t) {
    return shape * std::log(theta) + (shape - 1.0) * std::log(t) - theta * t -
           std::lgamma(shape);
}

/// Gamma density value at t = 0 (limit): finite only for shape >= 1.
inline double gamma_pdf_at_zero(double shape, double theta) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return theta;
    return std::numeric_limits<double>::infinity();
}

} // namespace detail

/// Density at t; the two weighted gamma terms are combined through
/// exp(log-sum) so that t^{shape-1} e^{-theta t} survives large theta*t.
inline double pdf(const GldParams& p, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("pdf: t must be non-negative");
    const auto [p1, p2] = mixture_weights(p);
    if (t == 0.0)
        return p1 * detail::gamma_pdf_at_zero(p.alpha, p.theta) +
               p2 * detail::gamma_pdf_at_zero(p.beta, p.theta);
    const double l1 = std::log(p1) + detail::log_gamma_pdf(p.alpha, p.theta, t);
    const double l2 = std::log(p2) + detail::log_gamma_pdf(p.beta, p.theta, t);
    const double hi = std::max(l1, l2);
    if (hi == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(hi) * (std::exp(l1 - hi) + std::exp(l2 - hi));
}

/// Survival (reliability) P(T > t) = p1 Q(alpha, theta t) + p2 Q(beta, theta t).
inline double survival(const GldParams& p, double t, const Accuracy& acc = {}) {
    if (!(t >= 0.0))
        throw std::domain_error("survival: t must be non-negative");
    if (t == 0.0) return 1.0; // p1 + p2 exactly, without the rounding of the two quotients
    const auto [p1, p2] = mixture_weights(p);
    const double x = p.theta * t;
    return p1 * reg_gamma_upper(p.alpha, x, acc) + p2 * reg_gamma_upper(p.beta, x, acc);
}

/// Hazard rate pdf(t)/survival(t). At t = 0 only the finite limit
/// (alpha, beta >= 1) is admitted; where survival has underflowed past
/// 1e-300 the ratio is numerical noise and an error is raised instead.
inline double hazard(const GldParams& p, double t, const Accuracy& acc = {}) {
    if (!(t >= 0.0))
        throw std::domain_error("hazard: t must be non-negative");
    if (t == 0.0) {
        if (p.alpha < 1.0 || p.beta < 1.0)
            throw std::domain_error("hazard: diverges at t = 0 for shapes below 1");
        return pdf(p, 0.0);
    }
    const double s = survival(p, t, acc);
    if (s < 1e-300)
        throw numerical_error("hazard: survival underflow at t = " + std::to_string(t) +
                              "; beyond the support of reliable evaluation");
    return pdf(p, t) / s;
}

/// Mean lifetime (gamma alpha + beta theta^eta) / (theta (gamma + theta^eta)),
/// i.e. the mixture of the two gamma means.
inline double mean(const GldParams& p) {
    const auto [p1, p2] = mixture_weights(p);
    return (p1 * p.alpha + p2 * p.beta) / p.theta;
}

/// Draw one lifetime: a gamma(alpha, theta) variate with probability p1,
/// else gamma(beta, theta).
inline double sample(const GldParams& p, Rng& rng) {
    const auto [p1, p2] = mixture_weights(p);
    (void)p2;
    const double u = rng.uniform();
    return u < p1 ? gamma_sample(p.alpha, p.theta, rng)
                  : gamma_sample(p.beta, p.theta, rng);
}

/// Exact special-case routing (bitwise parameter equality, no tolerance;
/// callers wanting fuzzy matching should round first).
inline SpecialCase classify(const GldParams& p) {
    if (p.alpha == 1.0 && p.beta == 1.0) return {SpecialKind::exponential, p.theta};
    if (p.alpha == 2.0 && p.beta == 1.0 && p.gamma_w == 1.0 && p.eta == 1.0)
        return {SpecialKind::lindley, p.theta};
    return {SpecialKind::general, p.theta};
}

} // namespace gldrel
