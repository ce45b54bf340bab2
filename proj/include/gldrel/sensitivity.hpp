#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gldrel/gld.hpp"
#include "gldrel/sysrel.hpp"

namespace gldrel {

/// The five distribution parameters a sensitivity can be taken against.
enum class ParamId { alpha, beta, theta, gamma_w, eta };

inline const char* param_name(ParamId p) {
    switch (p) {
        case ParamId::alpha: return "alpha";
        case ParamId::beta: return "beta";
        case ParamId::theta: return "theta";
        case ParamId::gamma_w: return "gamma";
        case ParamId::eta: return "eta";
    }
    return "?";
}

enum class SensTarget { mttf, reliability };
enum class SensMethod { analytic, finite_difference };

/// Finite-difference result with the quality flags attached: one_sided is
/// set when a domain boundary forced a forward/backward difference, and
/// richardson_warning when halving the step moved the estimate by more
/// than 1%.
struct Derivative {
    double value = 0.0;
    bool one_sided = false;
    bool richardson_warning = false;
};

/// Row-major sensitivity grid: parameter values as rows, n as columns,
/// mirroring the reference table layout.
struct SensitivityTable {
    SensTarget target;
    ParamId param;
    std::vector<double> param_values;
    std::vector<int> n_values;
    std::vector<double> values; // rows * cols, row-major
    SensMethod method;

    double at(std::size_t row, std::size_t col) const {
        return values[row * n_values.size() + col];
    }
};

namespace detail {

inline GldParams with_param(const GldParams& p, ParamId id, double v) {
    GldParams q = p;
    switch (id) {
        case ParamId::alpha: q.alpha = v; break;
        case ParamId::beta: q.beta = v; break;
        case ParamId::theta: q.theta = v; break;
        case ParamId::gamma_w: q.gamma_w = v; break;
        case ParamId::eta: q.eta = v; break;
    }
    // Re-validate through the checked constructor.
    return GldParams(q.alpha, q.beta, q.theta, q.gamma_w, q.eta);
}

inline double param_value(const GldParams& p, ParamId id) {
    switch (id) {
        case ParamId::alpha: return p.alpha;
        case ParamId::beta: return p.beta;
        case ParamId::theta: return p.theta;
        case ParamId::gamma_w: return p.gamma_w;
        case ParamId::eta: return p.eta;
    }
    return 0.0;
}

/// Smallest admissible value of a parameter (exclusive for the positives,
/// inclusive for the weight parameters).
inline double param_lower_bound(ParamId id) {
    switch (id) {
        case ParamId::alpha:
        case ParamId::beta:
        case ParamId::theta: return 0.0;
        case ParamId::gamma_w:
        case ParamId::eta: return 1.0;
    }
    return 0.0;
}

inline bool param_bound_inclusive(ParamId id) {
    return id == ParamId::gamma_w || id == ParamId::eta;
}

} // namespace detail

/// Closed-form partial derivative of the perfect-switch MTTF
/// (n/theta) (gamma alpha + beta theta^eta) / (gamma + theta^eta)
/// with respect to the chosen parameter. Validated against central
/// differences and the reference grids in the test suite.
inline double mttf_partial(const SystemConfig& cfg, ParamId param) {
    if (!cfg.perfect_switch())
        throw std::domain_error("mttf_partial: switch model must be perfect");
    const GldParams& p = cfg.component;
    const double n = static_cast<double>(cfg.n);
    const double x = std::pow(p.theta, p.eta); // theta^eta
    const double denom = p.gamma_w + x;
    switch (param) {
        case ParamId::alpha:
            return (n / p.theta) * p.gamma_w / denom;
        case ParamId::beta:
            return (n / p.theta) * x / denom;
        case ParamId::theta: {
            // Quotient rule on A/B with A = gamma alpha + beta theta^eta,
            // B = theta (gamma + theta^eta).
            const double a = p.gamma_w * p.alpha + p.beta * x;
            const double b = p.theta * denom;
            const double da = p.beta * p.eta * std::pow(p.theta, p.eta - 1.0);
            const double db = p.gamma_w + (p.eta + 1.0) * x;
            return n * (da * b - a * db) / (b * b);
        }
        case ParamId::gamma_w:
            return (n / p.theta) * x * (p.alpha - p.beta) / (denom * denom);
        case ParamId::eta:
            return (n / p.theta) * p.gamma_w * (p.beta - p.alpha) * x * std::log(p.theta) /
                   (denom * denom);
    }
    throw std::domain_error("mttf_partial: unknown parameter");
}

/// Central finite difference of the perfect-switch reliability at time t
/// with respect to one parameter. Perturbed shapes are generally
/// non-integer, so evaluation goes through the convolution quadrature.
/// Falls back to a one-sided difference when the perturbation would leave
/// the parameter domain, and attaches a warning when a Richardson halving
/// check moves the value by more than 1%.
inline Derivative reliability_partial(const SystemConfig& cfg, double t, ParamId param,
                                      double step) {
    if (!cfg.perfect_switch())
        throw std::domain_error("reliability_partial: switch model must be perfect");
    if (!(t >= 0.0))
        throw std::domain_error("reliability_partial: t must be non-negative");
    if (!(step > 0.0))
        throw std::domain_error("reliability_partial: step must be positive");

    const GldParams& p = cfg.component;
    const double v0 = detail::param_value(p, param);
    const double lo = detail::param_lower_bound(param);

    auto eval = [&](double v) {
        const GldParams q = detail::with_param(p, param, v);
        return detail::perfect_value(q, cfg.n, t);
    };

    auto diff = [&](double h) -> Derivative {
        Derivative d;
        const double down = v0 - h;
        const bool down_ok =
            detail::param_bound_inclusive(param) ? down >= lo : down > lo;
        if (down_ok) {
            d.value = (eval(v0 + h) - eval(down)) / (2.0 * h);
        } else {
            d.value = (eval(v0 + h) - eval(v0)) / h;
            d.one_sided = true;
        }
        return d;
    };

    Derivative full = diff(step);
    Derivative half = diff(0.5 * step);
    const double scale = std::max(std::fabs(half.value), 1e-12);
    half.one_sided = full.one_sided || half.one_sided;
    half.richardson_warning = std::fabs(full.value - half.value) > 0.01 * scale;
    return half;
}

/// Assemble a sensitivity grid over (parameter value) x n. MTTF targets use
/// the analytic partials; reliability targets use finite differences of the
/// perfect-switch reliability at time t_eval with the default step
/// 1e-5 * max(1, |value|).
inline SensitivityTable sensitivity_table(SensTarget target, ParamId param,
                                          const std::vector<double>& param_values,
                                          const std::vector<int>& n_values,
                                          const SystemConfig& base,
                                          double t_eval = 100.0) {
    if (param_values.empty() || n_values.empty())
        throw std::domain_error("sensitivity_table: value and n grids must be non-empty");
    SensitivityTable tab;
    tab.target = target;
    tab.param = param;
    tab.param_values = param_values;
    tab.n_values = n_values;
    tab.method = target == SensTarget::mttf ? SensMethod::analytic
                                            : SensMethod::finite_difference;
    tab.values.reserve(param_values.size() * n_values.size());
    for (double v : param_values) {
        const GldParams q = detail::with_param(base.component, param, v);
        for (int n : n_values) {
            SystemConfig cfg(n, q, PerfectSwitch{});
            if (target == SensTarget::mttf) {
                tab.values.push_back(mttf_partial(cfg, param));
            } else {
                const double step = 1e-5 * std::max(1.0, std::fabs(v));
                tab.values.push_back(reliability_partial(cfg, t_eval, param, step).value);
            }
        }
    }
    return tab;
}

} // namespace gldrel
