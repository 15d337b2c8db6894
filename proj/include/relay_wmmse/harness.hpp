// SPDX-License-Identifier: Apache-2.0
//
// relay-wmmse: joint transmit and relay precoding for relay-aided mmWave downlink
// Copyright (C) 2026 The relay-wmmse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAY_WMMSE_HARNESS_HPP
#define RELAY_WMMSE_HARNESS_HPP

#include "baselines.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "optimizer.hpp"
#include "rng.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace relay_wmmse {

enum class Scheme { wmmse, rzf, zf };

inline std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::wmmse: return "WMMSE";
    case Scheme::rzf: return "RZF";
    case Scheme::zf: return "ZF";
    }
    return "?";
}

// Case-insensitive; throws config_error on unknown names.
inline Scheme parse_scheme(std::string name)
{
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == "wmmse")
        return Scheme::wmmse;
    if (name == "rzf")
        return Scheme::rzf;
    if (name == "zf")
        return Scheme::zf;
    throw config_error("unknown scheme '" + name + "' (expected wmmse, rzf or zf)");
}

enum class SweepKind { power, relay_location, iterations };

inline std::string sweep_kind_name(SweepKind k)
{
    switch (k) {
    case SweepKind::power: return "power";
    case SweepKind::relay_location: return "relay_location";
    case SweepKind::iterations: return "iterations";
    }
    return "?";
}

struct SweepSpec {
    SweepKind kind = SweepKind::power;
    std::vector<double> grid;          // dBm, d_r / d_max, or epsilon values
    int trials = 50;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes{Scheme::wmmse, Scheme::rzf, Scheme::zf};
    SystemConfig base;
    int workers = 1;                   // execution only; never affects results
};

inline void validate(const SweepSpec& s)
{
    validate(s.base);
    if (s.grid.empty())
        throw config_error("invalid sweep: grid must be non-empty");
    if (!std::is_sorted(s.grid.begin(), s.grid.end()))
        throw config_error("invalid sweep: grid must be sorted ascending");
    if (s.trials < 1)
        throw config_error("invalid sweep: trial count must be >= 1");
    if (s.schemes.empty())
        throw config_error("invalid sweep: no schemes selected");
    if (s.kind == SweepKind::relay_location)
        for (double v : s.grid)
            if (!(v > 0.0 && v <= 1.0))
                throw config_error("invalid sweep: relay grid values must lie in (0, 1]");
    if (s.kind == SweepKind::iterations) {
        if (s.schemes != std::vector<Scheme>{Scheme::wmmse})
            throw config_error("invalid sweep: convergence traces are only defined for WMMSE");
        for (double v : s.grid)
            if (!(v > 0.0))
                throw config_error("invalid sweep: epsilon values must be positive");
    }
}

struct SweepRow {
    double sweep_value = 0.0;
    std::string scheme;
    double mean_sum_rate = 0.0;
    double stderr_sum_rate = 0.0;
    int trials = 0;
    std::optional<double> epsilon;   // iterations sweeps only
};

struct SweepResult {
    SweepKind kind = SweepKind::power;
    std::vector<SweepRow> rows;
    // iterations sweeps: mean stopping iteration per epsilon, in grid order
    std::vector<double> mean_stop_iteration;
};

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Arithmetic mean and sample standard deviation / sqrt(n), summed in index order.
inline MeanStderr mean_stderr(const std::vector<double>& x)
{
    MeanStderr r;
    if (x.empty())
        return r;
    double sum = 0.0;
    for (double v : x)
        sum += v;
    r.mean = sum / static_cast<double>(x.size());
    if (x.size() > 1) {
        double ss = 0.0;
        for (double v : x)
            ss += (v - r.mean) * (v - r.mean);
        r.stderr_ = std::sqrt(ss / static_cast<double>(x.size() - 1)) / std::sqrt(static_cast<double>(x.size()));
    }
    return r;
}

// Runs task(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads have joined.
inline void parallel_for(int count, int workers, const std::function<void(int)>& task)
{
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

// Channel realization of one trial. Depends only on (root seed, trial) and
// the configuration, never on the position in a sweep grid.
inline ChannelSet trial_channel(std::uint64_t root_seed, int trial, const SystemConfig& cfg)
{
    auto rng = trial_rng(root_seed, stream::channel, static_cast<std::uint64_t>(trial));
    return sample_channel_set(rng, cfg);
}

// Dispatches one scheme on one realization. `init_seed` feeds the WMMSE
// initializer (used only for random initialization).
inline RateReport run_trial(Scheme scheme, const ChannelSet& ch, const SystemConfig& cfg, std::uint64_t init_seed = 0)
{
    switch (scheme) {
    case Scheme::wmmse: {
        rng_engine rng(init_seed);
        return run_wmmse(ch, cfg, rng).report;
    }
    case Scheme::rzf: return run_baseline(BaselineKind::rzf, ch, cfg).report;
    case Scheme::zf: return run_baseline(BaselineKind::zf, ch, cfg).report;
    }
    throw contract_error("run_trial: unknown scheme");
}

inline std::uint64_t init_seed_for(std::uint64_t root_seed, int trial)
{
    return derive_seed(root_seed, {static_cast<std::uint64_t>(stream::init), static_cast<std::uint64_t>(trial)});
}

namespace detail {

// Shared driver for the power and relay-location sweeps.
inline SweepResult grid_sweep(const SweepSpec& spec, const std::function<SystemConfig(double)>& config_at)
{
    validate(spec);
    const int n_grid = static_cast<int>(spec.grid.size());
    const int n_schemes = static_cast<int>(spec.schemes.size());
    std::vector<SystemConfig> configs;
    for (double v : spec.grid) {
        configs.push_back(config_at(v));
        validate(configs.back());
    }

    // rates[(g * n_schemes + s) * trials + t]
    std::vector<double> rates(static_cast<std::size_t>(n_grid) * n_schemes * spec.trials);
    parallel_for(n_grid * spec.trials, spec.workers, [&](int task) {
        const int g = task / spec.trials;
        const int t = task % spec.trials;
        const auto& cfg = configs[g];
        const ChannelSet ch = trial_channel(spec.seed, t, cfg);
        for (int s = 0; s < n_schemes; ++s)
            rates[(static_cast<std::size_t>(g) * n_schemes + s) * spec.trials + t] =
                run_trial(spec.schemes[s], ch, cfg, init_seed_for(spec.seed, t)).sum_rate;
    });

    SweepResult out;
    out.kind = spec.kind;
    for (int g = 0; g < n_grid; ++g)
        for (int s = 0; s < n_schemes; ++s) {
            const auto first = rates.begin() + (static_cast<std::ptrdiff_t>(g) * n_schemes + s) * spec.trials;
            const auto ms = mean_stderr(std::vector<double>(first, first + spec.trials));
            out.rows.push_back({spec.grid[g], scheme_name(spec.schemes[s]), ms.mean, ms.stderr_, spec.trials, {}});
        }
    return out;
}

} // namespace detail

// Sum rate vs. transmit power with P_bs = P_re = grid value (dBm).
inline SweepResult sweep_power(const SweepSpec& spec)
{
    if (spec.kind != SweepKind::power)
        throw config_error("sweep_power: spec kind must be power");
    return detail::grid_sweep(spec, [&](double p_dbm) {
        SystemConfig c = spec.base;
        c.p_bs_dbm = p_dbm;
        c.p_re_dbm = p_dbm;
        return c;
    });
}

// Sum rate vs. normalized relay location, d_r = grid value * d_max.
inline SweepResult sweep_relay_location(const SweepSpec& spec)
{
    if (spec.kind != SweepKind::relay_location)
        throw config_error("sweep_relay_location: spec kind must be relay_location");
    return detail::grid_sweep(spec, [&](double frac) {
        SystemConfig c = spec.base;
        c.geometry.d_relay_m = frac * c.geometry.d_max_m;
        return c;
    });
}

// Mean WMMSE sum rate at every iteration index, one curve per epsilon in the
// grid. Runs that stop early are padded with their final value up to the
// longest run of that epsilon.
inline SweepResult convergence_trace(const SweepSpec& spec)
{
    if (spec.kind != SweepKind::iterations)
        throw config_error("convergence_trace: spec kind must be iterations");
    validate(spec);
    const int n_eps = static_cast<int>(spec.grid.size());
    std::vector<std::vector<double>> curves(static_cast<std::size_t>(n_eps) * spec.trials);
    parallel_for(n_eps * spec.trials, spec.workers, [&](int task) {
        const int e = task / spec.trials;
        const int t = task % spec.trials;
        SystemConfig cfg = spec.base;
        cfg.algorithm.epsilon = spec.grid[e];
        const ChannelSet ch = trial_channel(spec.seed, t, cfg);
        rng_engine rng(init_seed_for(spec.seed, t));
        const auto res = run_wmmse(ch, cfg, rng);
        auto& curve = curves[static_cast<std::size_t>(e) * spec.trials + t];
        for (const auto& rec : res.trace)
            curve.push_back(rec.sum_rate);
    });

    SweepResult out;
    out.kind = SweepKind::iterations;
    for (int e = 0; e < n_eps; ++e) {
        std::size_t longest = 0;
        double stop_sum = 0.0;
        for (int t = 0; t < spec.trials; ++t) {
            const auto& c = curves[static_cast<std::size_t>(e) * spec.trials + t];
            longest = std::max(longest, c.size());
            stop_sum += static_cast<double>(c.size());
        }
        out.mean_stop_iteration.push_back(stop_sum / spec.trials);
        for (std::size_t n = 0; n < longest; ++n) {
            std::vector<double> at_n;
            at_n.reserve(spec.trials);
            for (int t = 0; t < spec.trials; ++t) {
                const auto& c = curves[static_cast<std::size_t>(e) * spec.trials + t];
                at_n.push_back(n < c.size() ? c[n] : c.back());
            }
            const auto ms = mean_stderr(at_n);
            out.rows.push_back({static_cast<double>(n + 1), scheme_name(Scheme::wmmse), ms.mean, ms.stderr_,
                                spec.trials, spec.grid[e]});
        }
    }
    return out;
}

inline SweepResult run_sweep(const SweepSpec& spec)
{
    switch (spec.kind) {
    case SweepKind::power: return sweep_power(spec);
    case SweepKind::relay_location: return sweep_relay_location(spec);
    case SweepKind::iterations: return convergence_trace(spec);
    }
    throw contract_error("run_sweep: unknown sweep kind");
}

} // namespace relay_wmmse

#endif
