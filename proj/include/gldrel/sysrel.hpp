#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "gldrel/errors.hpp"
#include "gldrel/gld.hpp"
#include "gldrel/parallel.hpp"
#include "gldrel/quadrature.hpp"
#include "gldrel/sumdist.hpp"

namespace gldrel {

struct PerfectSwitch {};

struct ImperfectSwitch {
    GldParams params;
};

/// Switch model: a perfect switch never fails; an imperfect one has its own
/// generalized-Lindley lifetime and yields a lower-bound evaluation.
using SwitchModel = std::variant<PerfectSwitch, ImperfectSwitch>;

/// A 1-out-of-n cold-standby system: one active component, n-1 unpowered
/// spares activated in sequence by the switch.
struct SystemConfig {
    int n;
    GldParams component;
    SwitchModel switch_model;

    SystemConfig(int n_, GldParams component_, SwitchModel switch_model_ = PerfectSwitch{})
        : n(n_), component(component_), switch_model(std::move(switch_model_)) {
        if (n < 1) throw std::domain_error("SystemConfig: n must be >= 1");
    }

    bool perfect_switch() const {
        return std::holds_alternative<PerfectSwitch>(switch_model);
    }
};

enum class CurveMethod { closed, quadrature, simulation };

struct CurvePoint {
    double t;
    double value;
};

/// Sampled function of mission time (reliability or rate values).
struct Curve {
    std::vector<CurvePoint> grid;
    std::string label;
    CurveMethod method = CurveMethod::closed;
};

namespace detail {

inline bool is_positive_integer(double x) {
    return x >= 1.0 && x == std::floor(x) && std::isfinite(x);
}

/// Closed-form perfect-switch reliability for integer shapes: the telescoped
/// triple sum over standby depth i, binomial split j, and the per-component
/// partial-sum index k. Every term is formed as exp(log term); the factorial
/// (j*alpha + (i-j)*beta + k)! enters through ln Gamma.
inline double perfect_closed_value(const GldParams& p, int n, double t) {
    if (t == 0.0) return 1.0;
    const int ia = static_cast<int>(p.alpha);
    const int ib = static_cast<int>(p.beta);
    const double terms = 0.5 * static_cast<double>(n) * (n + 1.0) * (ia + ib);
    if (terms > 2e8)
        throw numerical_error("closed-form term budget exceeded (n or integer shapes too large)");
    const auto [p1, p2] = mixture_weights(p);
    const double lp1 = std::log(p1);
    const double lp2 = std::log(p2);
    const double lratio = std::log(p.gamma_w) - p.eta * std::log(p.theta); // ln(gamma/theta^eta)
    const double lx = std::log(p.theta * t);
    const double x = p.theta * t;

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double li = static_cast<double>(i) * lp2; // ln (theta^eta/(gamma+theta^eta))^i
        const double lgi = std::lgamma(static_cast<double>(i) + 1.0);
        for (int j = 0; j <= i; ++j) {
            const double lc = lgi - std::lgamma(static_cast<double>(j) + 1.0) -
                              std::lgamma(static_cast<double>(i - j) + 1.0) +
                              static_cast<double>(j) * lratio + li;
            const double s = static_cast<double>(j) * p.alpha +
                             static_cast<double>(i - j) * p.beta;
            for (int k = 0; k < ia; ++k) {
                const double m = s + k;
                total += std::exp(lp1 + lc + m * lx - x - std::lgamma(m + 1.0));
            }
            for (int k = 0; k < ib; ++k) {
                const double m = s + k;
                total += std::exp(lp2 + lc + m * lx - x - std::lgamma(m + 1.0));
            }
        }
    }
    // The analytic value lies in [0,1]; shave only accumulated rounding.
    if (total > 1.0 && total < 1.0 + 1e-12) total = 1.0;
    if (total < 0.0 && total > -1e-12) total = 0.0;
    return total;
}

/// Convolution evaluation of the perfect-switch reliability: survival of the
/// active unit plus one convolution integral per standby depth.
inline double perfect_quadrature_value(const GldParams& p, int n, double t,
                                       double abs_tol = 1e-10,
                                       std::size_t max_evals = 1'000'000) {
    double total = survival(p, t);
    if (t == 0.0) return total;
    for (int i = 1; i < n; ++i) {
        const GammaMixture m = sum_distribution(p, i);
        auto integrand = [&](double u) { return mixture_pdf(m, u) * survival(p, t - u); };
        const QuadResult q = integrate_adaptive(integrand, 0.0, t, abs_tol, max_evals);
        if (!q.converged)
            throw numerical_error("perfect-switch quadrature failed to converge at i=" +
                                  std::to_string(i) + ", t=" + std::to_string(t));
        total += q.value;
    }
    return total;
}

/// Route to the closed form when both shapes are positive integers, else to
/// the convolution quadrature.
inline double perfect_value(const GldParams& p, int n, double t) {
    if (is_positive_integer(p.alpha) && is_positive_integer(p.beta))
        return perfect_closed_value(p, n, t);
    return perfect_quadrature_value(p, n, t);
}

} // namespace detail

/// Closed-form system reliability under a perfect switch. Only positive
/// integer shapes are admitted; anything else must go through
/// reliability_perfect_quadrature, whose inner sums do not truncate.
inline double reliability_perfect_closed(const SystemConfig& cfg, double t) {
    if (!cfg.perfect_switch())
        throw std::domain_error("reliability_perfect_closed: switch model must be perfect");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_perfect_closed: t must be non-negative");
    if (!detail::is_positive_integer(cfg.component.alpha) ||
        !detail::is_positive_integer(cfg.component.beta))
        throw std::invalid_argument(
            "reliability_perfect_closed: shapes must be positive integers; "
            "use reliability_perfect_quadrature for real shapes");
    return detail::perfect_closed_value(cfg.component, cfg.n, t);
}

/// Convolution (adaptive quadrature) evaluation of the perfect-switch
/// reliability; valid for any real shapes and the reference for the closed
/// form.
inline double reliability_perfect_quadrature(const SystemConfig& cfg, double t) {
    if (!cfg.perfect_switch())
        throw std::domain_error("reliability_perfect_quadrature: switch model must be perfect");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_perfect_quadrature: t must be non-negative");
    return detail::perfect_quadrature_value(cfg.component, cfg.n, t);
}

/// Perfect-switch reliability with automatic routing (closed form for
/// integer shapes, quadrature otherwise).
inline double reliability_perfect(const SystemConfig& cfg, double t) {
    if (!cfg.perfect_switch())
        throw std::domain_error("reliability_perfect: switch model must be perfect");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_perfect: t must be non-negative");
    return detail::perfect_value(cfg.component, cfg.n, t);
}

/// Exponential special case: e^{-theta t} times the Poisson partial sum of
/// order n-1, via the stable term recurrence.
inline double reliability_exponential(int n, double theta, double t) {
    if (n < 1) throw std::domain_error("reliability_exponential: n must be >= 1");
    if (!(theta > 0.0)) throw std::domain_error("reliability_exponential: theta must be positive");
    if (!(t >= 0.0)) throw std::domain_error("reliability_exponential: t must be non-negative");
    const double x = theta * t;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 1; i < n; ++i) {
        term *= x / static_cast<double>(i);
        sum += term;
    }
    return std::exp(-x) * sum;
}

/// Lindley special case, evaluated by substituting (2, 1, theta, 1, 1) into
/// the validated closed form.
inline double reliability_lindley(int n, double theta, double t) {
    if (n < 1) throw std::domain_error("reliability_lindley: n must be >= 1");
    const GldParams lp(2.0, 1.0, theta, 1.0, 1.0);
    if (!(t >= 0.0)) throw std::domain_error("reliability_lindley: t must be non-negative");
    return detail::perfect_closed_value(lp, n, t);
}

/// Alternative closed-series expression for the Lindley case that circulates
/// in some derivations. It omits a theta/(1+theta) scaling inside the final
/// bracket and therefore disagrees with the validated evaluator (already at
/// n = 1 it is not the Lindley survival). Retained only as a diagnostic;
/// see lindley_series_discrepancy.
inline double reliability_lindley_alt_series(int n, double theta, double t) {
    if (n < 1) throw std::domain_error("reliability_lindley_alt_series: n must be >= 1");
    if (!(t >= 0.0)) throw std::domain_error("reliability_lindley_alt_series: t must be non-negative");
    const double base = theta * theta / (1.0 + theta);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double m = static_cast<double>(i + j);
            const double lterm = static_cast<double>(i) * std::log(base) +
                                 std::lgamma(static_cast<double>(i) + 1.0) -
                                 std::lgamma(static_cast<double>(j) + 1.0) -
                                 std::lgamma(static_cast<double>(i - j) + 1.0) +
                                 (t > 0.0 ? m * std::log(t) : (m == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity())) -
                                 std::lgamma(m + 1.0);
            total += std::exp(lterm) * (1.0 + t / (m + 1.0));
        }
    }
    return std::exp(-theta * t) * total;
}

/// Gap between the alternative Lindley series and the validated evaluator at
/// (n, theta, t). Nonzero already at n = 1, which is the diagnostic signal
/// that the alternative series is inconsistent.
inline double lindley_series_discrepancy(int n, double theta, double t) {
    return std::fabs(reliability_lindley_alt_series(n, theta, t) -
                     reliability_lindley(n, theta, t));
}

/// Mean time to failure under a perfect switch: exactly n times the
/// component mean.
inline double mttf_perfect(const SystemConfig& cfg) {
    if (!cfg.perfect_switch())
        throw std::domain_error("mttf_perfect: switch model must be perfect");
    return static_cast<double>(cfg.n) * mean(cfg.component);
}

/// Lower bound on system reliability under an imperfect switch:
/// r(t) + r_s(t) (R_perfect(t) - r(t)), valid because the switch survival
/// r_s is non-increasing in time.
inline double reliability_imperfect_lower(const SystemConfig& cfg, double t) {
    const auto* sw = std::get_if<ImperfectSwitch>(&cfg.switch_model);
    if (sw == nullptr)
        throw std::domain_error("reliability_imperfect_lower: switch model must be imperfect");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_imperfect_lower: t must be non-negative");
    const double r = survival(cfg.component, t);
    if (cfg.n == 1) return r;
    const double rs = survival(sw->params, t);
    const double rp = detail::perfect_value(cfg.component, cfg.n, t);
    return r + rs * (rp - r);
}

namespace detail {

template <class Eval>
Curve sample_curve(double mission, int points, int threads, std::string label,
                   CurveMethod method, Eval&& eval) {
    if (points < 2) throw std::domain_error("curve: need at least 2 grid points");
    if (!(mission > 0.0)) throw std::domain_error("curve: mission must be positive");
    Curve c;
    c.label = std::move(label);
    c.method = method;
    c.grid.resize(static_cast<std::size_t>(points));
    const double dt = mission / static_cast<double>(points - 1);
    parallel_for_blocks(c.grid.size(), threads, [&](std::size_t first, std::size_t last) {
        for (std::size_t k = first; k < last; ++k) {
            const double t = (k + 1 == c.grid.size()) ? mission : dt * static_cast<double>(k);
            c.grid[k] = {t, eval(t)};
        }
    });
    return c;
}

} // namespace detail

/// Perfect-switch reliability curve on an equally spaced grid over
/// [0, mission]. Grid points are independent and may be evaluated in
/// parallel; the output ordering is fixed.
inline Curve reliability_curve_perfect(const GldParams& component, int n, double mission,
                                       int points = 201, int threads = 1) {
    const bool closed = detail::is_positive_integer(component.alpha) &&
                        detail::is_positive_integer(component.beta);
    return detail::sample_curve(
        mission, points, threads, "perfect n=" + std::to_string(n),
        closed ? CurveMethod::closed : CurveMethod::quadrature,
        [&](double t) { return detail::perfect_value(component, n, t); });
}

/// Imperfect-switch lower-bound curve over [0, mission].
inline Curve reliability_curve_imperfect_lower(const GldParams& component,
                                               const GldParams& switch_params, int n,
                                               double mission, int points = 201,
                                               int threads = 1) {
    SystemConfig cfg(n, component, ImperfectSwitch{switch_params});
    const bool closed = detail::is_positive_integer(component.alpha) &&
                        detail::is_positive_integer(component.beta);
    return detail::sample_curve(
        mission, points, threads, "imperfect lower bound n=" + std::to_string(n),
        closed ? CurveMethod::closed : CurveMethod::quadrature,
        [&](double t) { return reliability_imperfect_lower(cfg, t); });
}

} // namespace gldrel
