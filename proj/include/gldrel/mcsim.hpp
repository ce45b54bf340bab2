#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gldrel/errors.hpp"
#include "gldrel/gld.hpp"
#include "gldrel/parallel.hpp"
#include "gldrel/rng.hpp"
#include "gldrel/sysrel.hpp"

namespace gldrel {

/// Monte Carlo run configuration. Replication count, seed and grid fully
/// determine the result; reruns are bit-identical.
struct SimConfig {
    std::size_t replications = 1'000'000;
    std::uint64_t seed = 0;
    std::vector<double> t_grid;
    bool antithetic = false;
};

struct SimEstimate {
    double t;
    double reliability;
    double std_error;
};

struct SimResult {
    std::vector<SimEstimate> estimates;
    double mttf_value = 0.0;
    double mttf_std_error = 0.0;
    std::size_t replications_used = 0;
    std::uint64_t seed = 0;
};

/// Independent random stream for one replication: same (seed, index) always
/// reproduces the same stream; distinct indices land at unrelated points of
/// the generator orbit.
inline Rng stream_for(std::uint64_t seed, std::uint64_t replication_index) {
    return Rng(seed, replication_index);
}

namespace detail {

inline void validate_sim_config(const SimConfig& sim) {
    if (sim.replications < 100)
        throw std::domain_error("SimConfig: need at least 100 replications");
    for (std::size_t i = 0; i < sim.t_grid.size(); ++i) {
        if (!(sim.t_grid[i] >= 0.0))
            throw std::domain_error("SimConfig: grid times must be non-negative");
        if (i > 0 && !(sim.t_grid[i] > sim.t_grid[i - 1]))
            throw std::domain_error("SimConfig: grid times must be strictly increasing");
    }
}

/// Failure time of the system with a perfect switch: the sum of all n
/// component lifetimes.
inline double system_life_perfect(const GldParams& comp, int n, Rng& rng) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sample(comp, rng);
    return s;
}

/// Failure time with an imperfect switch. One switch lifetime w governs all
/// switchings of the replication: the activation of spare i+1 at time S_i
/// succeeds iff w > S_i (success at the latest switching implies success at
/// all earlier ones). Component lifetimes are drawn lazily, so a failed
/// switching ends the replication.
inline double system_life_imperfect(const GldParams& comp, const GldParams& sw, int n,
                                    Rng& rng) {
    double s = sample(comp, rng);
    if (n == 1) return s;
    const double w = sample(sw, rng);
    for (int i = 1; i < n; ++i) {
        if (w <= s) return s; // spare never activates; system dies at S_i
        s += sample(comp, rng);
    }
    return s;
}

struct SimTally {
    std::vector<std::uint64_t> surviving;  // per grid point: lifetimes > t
    std::vector<std::uint64_t> pair_both;  // antithetic: both of pair survive
    std::vector<std::uint64_t> pair_one;   // antithetic: exactly one survives
    double life_sum = 0.0;
    double life_sumsq = 0.0;     // plain: per replication; antithetic: per pair mean
};

template <class LifeFn>
SimResult run_simulation(const SimConfig& sim, int threads, LifeFn&& life) {
    validate_sim_config(sim);
    const std::size_t n_grid = sim.t_grid.size();
    const bool anti = sim.antithetic;
    // A unit is one replication, or one antithetic pair.
    const std::size_t n_units = anti ? sim.replications / 2 : sim.replications;
    const std::size_t reps_used = anti ? n_units * 2 : sim.replications;

    constexpr std::size_t kChunk = 1 << 14;
    const std::size_t n_chunks = (n_units + kChunk - 1) / kChunk;
    std::vector<SimTally> tallies(n_chunks);

    parallel_for_blocks(n_chunks, threads, [&](std::size_t cfirst, std::size_t clast) {
        for (std::size_t c = cfirst; c < clast; ++c) {
            SimTally& tl = tallies[c];
            tl.surviving.assign(n_grid, 0);
            if (anti) {
                tl.pair_both.assign(n_grid, 0);
                tl.pair_one.assign(n_grid, 0);
            }
            const std::size_t ufirst = c * kChunk;
            const std::size_t ulast = std::min(n_units, ufirst + kChunk);
            for (std::size_t u = ufirst; u < ulast; ++u) {
                if (!anti) {
                    Rng rng = stream_for(sim.seed, u);
                    const double ft = life(rng);
                    for (std::size_t j = 0; j < n_grid; ++j)
                        tl.surviving[j] += ft > sim.t_grid[j] ? 1 : 0;
                    tl.life_sum += ft;
                    tl.life_sumsq += ft * ft;
                } else {
                    Rng rng_a = stream_for(sim.seed, u);
                    Rng rng_b = stream_for(sim.seed, u);
                    rng_b.set_antithetic(true);
                    const double fa = life(rng_a);
                    const double fb = life(rng_b);
                    for (std::size_t j = 0; j < n_grid; ++j) {
                        const int ia = fa > sim.t_grid[j] ? 1 : 0;
                        const int ib = fb > sim.t_grid[j] ? 1 : 0;
                        tl.surviving[j] += static_cast<std::uint64_t>(ia + ib);
                        if (ia + ib == 2) ++tl.pair_both[j];
                        if (ia + ib == 1) ++tl.pair_one[j];
                    }
                    const double pm = 0.5 * (fa + fb);
                    tl.life_sum += pm;
                    tl.life_sumsq += pm * pm;
                }
            }
        }
    });

    // Deterministic merge in chunk order, independent of the worker count.
    SimTally total;
    total.surviving.assign(n_grid, 0);
    total.pair_both.assign(n_grid, 0);
    total.pair_one.assign(n_grid, 0);
    for (const auto& tl : tallies) {
        for (std::size_t j = 0; j < n_grid; ++j) {
            total.surviving[j] += tl.surviving[j];
            if (anti) {
                total.pair_both[j] += tl.pair_both[j];
                total.pair_one[j] += tl.pair_one[j];
            }
        }
        total.life_sum += tl.life_sum;
        total.life_sumsq += tl.life_sumsq;
    }

    SimResult out;
    out.seed = sim.seed;
    out.replications_used = reps_used;
    out.estimates.reserve(n_grid);
    const double units = static_cast<double>(n_units);
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double p = static_cast<double>(total.surviving[j]) /
                         static_cast<double>(reps_used);
        double se;
        if (!anti) {
            se = std::sqrt(std::max(0.0, p * (1.0 - p) / units));
        } else {
            // Variance of the mean of the per-pair means m in {0, 1/2, 1}.
            const double sum_m = static_cast<double>(total.pair_both[j]) +
                                 0.5 * static_cast<double>(total.pair_one[j]);
            const double sum_m2 = static_cast<double>(total.pair_both[j]) +
                                  0.25 * static_cast<double>(total.pair_one[j]);
            const double var = units > 1.0
                                   ? std::max(0.0, (sum_m2 - sum_m * sum_m / units) /
                                                       (units - 1.0))
                                   : 0.0;
            se = std::sqrt(var / units);
        }
        out.estimates.push_back({sim.t_grid[j], p, se});
    }

    const double mean_life = total.life_sum / units;
    const double var_life =
        units > 1.0
            ? std::max(0.0, (total.life_sumsq - total.life_sum * total.life_sum / units) /
                                (units - 1.0))
            : 0.0;
    out.mttf_value = mean_life;
    out.mttf_std_error = std::sqrt(var_life / units);
    return out;
}

} // namespace detail

/// Simulate the perfect-switch system: the system survives mission t iff
/// the total of the n lifetimes exceeds t. Each replication's failure time
/// is computed once and thresholded against every grid point, so estimates
/// are exactly monotone along the grid.
inline SimResult simulate_perfect(const SystemConfig& cfg, const SimConfig& sim,
                                  int threads = 1) {
    if (!cfg.perfect_switch())
        throw std::domain_error("simulate_perfect: switch model must be perfect");
    return detail::run_simulation(sim, threads, [&](Rng& rng) {
        return detail::system_life_perfect(cfg.component, cfg.n, rng);
    });
}

/// Simulate the imperfect-switch system (exact physical process, one switch
/// lifetime per replication).
inline SimResult simulate_imperfect(const SystemConfig& cfg, const SimConfig& sim,
                                    int threads = 1) {
    const auto* sw = std::get_if<ImperfectSwitch>(&cfg.switch_model);
    if (sw == nullptr)
        throw std::domain_error("simulate_imperfect: switch model must be imperfect");
    return detail::run_simulation(sim, threads, [&](Rng& rng) {
        return detail::system_life_imperfect(cfg.component, sw->params, cfg.n, rng);
    });
}

} // namespace gldrel
