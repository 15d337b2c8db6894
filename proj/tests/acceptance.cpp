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

// Acceptance runner. One PASS/FAIL line per criterion; exits nonzero when
// any criterion fails.

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

using namespace relay_wmmse;
using namespace relay_wmmse::testing;

namespace {

using clock_type = std::chrono::steady_clock;

int workers()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void criterion(const char* name, const std::function<Verdict()>& body)
{
    const auto t0 = clock_type::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s  %-22s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

// Rate-MMSE identity on 1000 instances and receiver optimality on 100 x 100
// perturbations; all within 10 s.
Verdict formula_suite()
{
    const auto t0 = clock_type::now();
    rng_engine rng(101);
    double worst_identity = 0.0;
    const int sizes[][3] = {{2, 2, 1}, {4, 4, 3}, {8, 6, 4}, {8, 8, 8}};
    for (int i = 0; i < 1000; ++i) {
        const auto& sz = sizes[i % 4];
        auto cfg = generic_config(sz[0], sz[1], sz[2]);
        cfg.p_bs_dbm = uniform(rng, -10.0, 30.0);
        cfg.p_re_dbm = uniform(rng, -10.0, 30.0);
        const auto ch = generic_channel(rng, cfg);
        const auto p = generic_precoders(rng, cfg);
        for (int k = 0; k < cfg.n_users; ++k)
            worst_identity =
                std::max(worst_identity, std::abs(user_rate(k, p, ch, cfg) + std::log2(mmse_value(k, p, ch, cfg))));
    }

    int violations = 0;
    const auto cfg = generic_config(6, 6, 4);
    for (int i = 0; i < 100; ++i) {
        const auto ch = generic_channel(rng, cfg);
        const auto p = generic_precoders(rng, cfg);
        const int k = i % cfg.n_users;
        const cplx v = mmse_receiver(k, p, ch, cfg);
        const double best = mse(k, v, p, ch, cfg);
        for (int d = 0; d < 100; ++d) {
            const cplx delta = complex_normal(rng) * std::max(std::abs(v), 1e-3) * std::pow(10.0, uniform(rng, -3, 0));
            if (!(mse(k, v + delta, p, ch, cfg) > best))
                ++violations;
        }
    }
    const double t = seconds_since(t0);
    return {worst_identity <= 1e-9 && violations == 0 && t < 10.0,
            fmt("max |R + log2(eps_min)| = %.2e (<= 1e-9), perturbations beating the MMSE receiver = %d/10000, "
                "%.2f s (< 10 s)",
                worst_identity, violations, t)};
}

Verdict scalar_fixture()
{
    const auto cfg = scalar_config();
    const auto ch = scalar_channel();
    const auto p = scalar_precoders();
    ReceiverState s = receiver_update(p, ch, cfg);
    s.beta2 = compute_beta2(s, cfg);
    s.beta1 = compute_beta1(s, p, ch, cfg);
    const cmat g = update_relay_precoder(s, p.f, ch, cfg);
    const cmat f = update_transmit_precoder(s, p.g, ch, cfg);

    const double errs[] = {
        std::abs(effective_noise_variance(0, p, ch, cfg) - 2.0),
        std::abs(s.v_rx(0) - cplx(1.0 / 3.0)),
        std::abs(mmse_value(0, p, ch, cfg) - 2.0 / 3.0),
        std::abs(s.w(0) - 1.5),
        std::abs(s.beta2 - 1.0 / 12.0),
        std::abs(s.beta1 - 0.25),
        std::abs(g(0, 0) - 1.0),
        std::abs(f(0, 0) - 1.0),
    };
    const double worst = *std::max_element(std::begin(errs), std::end(errs));
    return {worst <= 1e-12, fmt("sigma2, V, eps_min, w, beta2, beta1, G, f: max abs error %.2e (<= 1e-12)", worst)};
}

// Termination point of a tightly converged run, 8/8/4 at 20 dBm.
Verdict kkt()
{
    const auto t0 = clock_type::now();
    auto cfg = mmwave_config(8, 4);
    cfg.algorithm.epsilon = 1e-10;
    cfg.algorithm.n_max = 2000;
    const int instances = 100;
    std::vector<double> residual(instances);
    parallel_for(instances, workers(), [&](int t) {
        const auto ch = trial_channel(201, t, cfg);
        rng_engine rng(init_seed_for(201, t));
        const auto res = run_wmmse(ch, cfg, rng);
        const auto& p = res.precoders;
        ReceiverState s = receiver_update(p, ch, cfg);
        s.beta2 = compute_beta2(s, cfg);
        s.beta1 = compute_beta1(s, p, ch, cfg);
        residual[t] = kkt_residuals(p, s, ch, cfg).max();
    });
    const int ok = static_cast<int>(std::count_if(residual.begin(), residual.end(), [](double r) { return r < 1e-4; }));
    std::sort(residual.begin(), residual.end());
    const double t = seconds_since(t0);
    return {ok >= 95 && t < 60.0,
            fmt("%d/100 instances with max relative residual < 1e-4 (need >= 95), median %.2e, %.1f s (< 60 s)", ok,
                residual[instances / 2], t)};
}

Verdict monotonicity()
{
    const auto cfg = mmwave_config(8, 4);
    const int runs = 100;
    std::vector<int> good(runs);
    parallel_for(runs, workers(), [&](int t) {
        const auto ch = trial_channel(301, t, cfg);
        rng_engine rng(init_seed_for(301, t));
        const auto tr = run_wmmse(ch, cfg, rng).report.objective_trace;
        bool mono = true;
        for (std::size_t i = 1; i < tr.size(); ++i)
            mono = mono && tr[i] <= tr[i - 1] + 1e-6;
        good[t] = mono;
    });
    const int ok = std::accumulate(good.begin(), good.end(), 0);
    return {ok >= 95, fmt("%d/100 runs with xi non-increasing up to 1e-6 per step (need >= 95)", ok)};
}

Verdict brute_force()
{
    const auto cfg = scalar_config();
    const auto ch = scalar_channel();
    rng_engine rng(401);
    const double wmmse = run_wmmse(ch, cfg, rng).report.sum_rate;

    rng_engine search(402);
    const double two_pi = 2.0 * std::numbers::pi;
    double best = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const cplx f = std::polar(std::sqrt(cfg.p_bs() * uniform(search, 0.0, 1.0)), uniform(search, 0.0, two_pi));
        const double g_max = std::sqrt(cfg.p_re() / (std::norm(f) + cfg.sigma2_relay()));
        const cplx g = std::polar(g_max * std::sqrt(uniform(search, 0.0, 1.0)), uniform(search, 0.0, two_pi));
        best = std::max(best, sum_rate({cmat::Constant(1, 1, f), cmat::Constant(1, 1, g)}, ch, cfg));
    }
    return {wmmse >= best - 1e-3,
            fmt("WMMSE %.6f vs best of 1e6 feasible pairs %.6f bit/s/Hz (need >= best - 1e-3)", wmmse, best)};
}

double mean_of(const SweepResult& r, const std::string& scheme, double value)
{
    for (const auto& row : r.rows)
        if (row.scheme == scheme && row.sweep_value == value)
            return row.mean_sum_rate;
    throw contract_error("missing sweep row " + scheme);
}

SweepSpec figure_spec(SweepKind kind, int antennas, std::vector<double> grid)
{
    SweepSpec s;
    s.kind = kind;
    s.grid = std::move(grid);
    s.trials = 50;
    s.seed = 1;
    s.base = mmwave_config(antennas, antennas);
    s.workers = workers();
    if (kind == SweepKind::iterations)
        s.schemes = {Scheme::wmmse};
    return s;
}

Verdict power_ordering()
{
    const auto t0 = clock_type::now();
    const auto r16 = run_sweep(figure_spec(SweepKind::power, 16, {20.0}));
    const auto r32 = run_sweep(figure_spec(SweepKind::power, 32, {20.0}));
    const double w16 = mean_of(r16, "WMMSE", 20), rz16 = mean_of(r16, "RZF", 20), z16 = mean_of(r16, "ZF", 20);
    const double w32 = mean_of(r32, "WMMSE", 20), rz32 = mean_of(r32, "RZF", 20);
    const double t = seconds_since(t0);
    const bool pass = w16 > rz16 && rz16 > z16 && z16 < 1.0 && (w32 - rz32) > (w16 - rz16) && t < 600.0;
    return {pass, fmt("N=K=16: WMMSE %.3f > RZF %.3f > ZF %.3f (ZF < 1); WMMSE-RZF gap %.3f (N=16) -> %.3f (N=32); "
                      "%.0f s (< 600 s)",
                      w16, rz16, z16, w16 - rz16, w32 - rz32, t)};
}

Verdict relay_location()
{
    const auto t0 = clock_type::now();
    const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    auto spec = figure_spec(SweepKind::relay_location, 16, grid);
    spec.schemes = {Scheme::wmmse, Scheme::rzf};
    spec.base.geometry.d_max_m = 150.0;
    const auto r = run_sweep(spec);
    auto argmax = [&](const std::string& scheme) {
        double best = -1.0, at = 0.0;
        for (double v : grid)
            if (const double m = mean_of(r, scheme, v); m > best) {
                best = m;
                at = v;
            }
        return at;
    };
    const double target = spec.base.geometry.d_min_m / spec.base.geometry.d_max_m;
    const double w = argmax("WMMSE"), rz = argmax("RZF");
    const double t = seconds_since(t0);
    const bool pass = rz == grid.front() && std::abs(w - target) <= 0.1 + 1e-12 && t < 600.0;
    std::string curve;
    for (double v : grid)
        curve += fmt(" %.1f:%.2f", v, mean_of(r, "RZF", v));
    return {pass, fmt("RZF argmax %.1f (need %.1f); WMMSE argmax %.1f (need |x - %.3f| <= 0.1); RZF means%s; "
                      "%.0f s (< 600 s)",
                      rz, grid.front(), w, target, curve.c_str(), t)};
}

Verdict stopping()
{
    auto spec = figure_spec(SweepKind::iterations, 16, {0.001, 0.01, 0.1});
    const auto r = run_sweep(spec);
    const auto& m = r.mean_stop_iteration;
    const bool pass = m[2] <= 20.0 && m[1] <= m[0] && m[2] <= m[1];
    return {pass, fmt("mean stopping iteration eps=0.001: %.1f, 0.01: %.1f, 0.1: %.1f (need eps=0.1 <= 20 and "
                      "non-increasing)",
                      m[0], m[1], m[2])};
}

Verdict determinism()
{
    std::vector<std::string> mismatched;
    for (SweepKind kind : {SweepKind::power, SweepKind::relay_location, SweepKind::iterations}) {
        SweepSpec s;
        s.kind = kind;
        s.grid = kind == SweepKind::power ? std::vector<double>{10, 20}
                 : kind == SweepKind::relay_location ? std::vector<double>{0.3, 0.6}
                                                     : std::vector<double>{0.01, 0.1};
        s.trials = 6;
        s.seed = 42;
        s.base = mmwave_config(8, 4);
        if (kind == SweepKind::iterations)
            s.schemes = {Scheme::wmmse};
        s.workers = 1;
        const std::string a = sweep_csv(run_sweep(s));
        s.workers = 4;
        const std::string b = sweep_csv(run_sweep(s));
        if (a != b)
            mismatched.push_back(sweep_kind_name(kind));
    }
    std::string which;
    for (const auto& k : mismatched)
        which += " " + k;
    return {mismatched.empty(), mismatched.empty() ? "power, relay_location, iterations CSVs byte-identical across "
                                                     "repeated runs (1 and 4 workers)"
                                                   : "CSV differs for:" + which};
}

} // namespace

int main()
{
    criterion("formula-suite", formula_suite);
    criterion("scalar-fixture", scalar_fixture);
    criterion("kkt-residuals", kkt);
    criterion("monotonicity", monotonicity);
    criterion("brute-force-oracle", brute_force);
    criterion("power-sweep-ordering", power_ordering);
    criterion("relay-location-argmax", relay_location);
    criterion("stopping-iterations", stopping);
    criterion("determinism", determinism);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
