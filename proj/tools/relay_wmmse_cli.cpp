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

// relay-wmmse: command-line driver for single trials and the three sweeps.

#include "relay_wmmse/relay_wmmse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace relay_wmmse;

namespace {

enum exit_code : int {
    exit_ok = 0,
    exit_other = 1,
    exit_config = 2,
    exit_numeric = 3,
    exit_io = 4,
};

struct Invocation {
    std::string subcommand;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::vector<std::string> schemes;
    int workers = 1;
    bool verbose = false;
};

std::string default_out_dir()
{
    if (const char* env = std::getenv("RELAY_WMMSE_OUT"); env && *env)
        return env;
    return "results";
}

LoadedConfig resolve_config(const Invocation& inv)
{
    LoadedConfig cfg = inv.config_path.empty() ? parse_config("") : load_config(inv.config_path);
    if (inv.seed)
        cfg.sweep.seed = *inv.seed;
    if (inv.trials) {
        if (*inv.trials < 1)
            throw config_error("--trials must be >= 1");
        cfg.sweep.trials = *inv.trials;
    }
    if (!inv.schemes.empty()) {
        cfg.sweep.schemes.clear();
        for (const auto& s : inv.schemes) {
            if (s == "all") {
                cfg.sweep.schemes = {Scheme::wmmse, Scheme::rzf, Scheme::zf};
                break;
            }
            cfg.sweep.schemes.push_back(parse_scheme(s));
        }
    }
    return cfg;
}

void print_sweep_table(const SweepResult& r)
{
    if (r.kind == SweepKind::iterations) {
        std::printf("%-10s %12s %12s %10s\n", "epsilon", "stop_iter", "final_rate", "stderr");
        std::size_t e = 0;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (i + 1 < r.rows.size() && r.rows[i + 1].epsilon == r.rows[i].epsilon)
                continue;
            std::printf("%-10g %12.2f %12.4f %10.4f\n", r.rows[i].epsilon.value_or(0.0), r.mean_stop_iteration[e++],
                        r.rows[i].mean_sum_rate, r.rows[i].stderr_sum_rate);
        }
        return;
    }
    std::vector<std::string> schemes;
    for (const auto& row : r.rows)
        if (std::find(schemes.begin(), schemes.end(), row.scheme) == schemes.end())
            schemes.push_back(row.scheme);
    std::printf("%-12s", r.kind == SweepKind::power ? "power_dbm" : "d_r/d_max");
    for (const auto& s : schemes)
        std::printf(" %20s", s.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < r.rows.size(); i += schemes.size()) {
        std::printf("%-12g", r.rows[i].sweep_value);
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            char cell[64];
            std::snprintf(cell, sizeof cell, "%.4f +- %.4f", r.rows[i + s].mean_sum_rate, r.rows[i + s].stderr_sum_rate);
            std::printf(" %20s", cell);
        }
        std::printf("\n");
    }
}

int run_sweep_command(const Invocation& inv, SweepKind kind)
{
    const LoadedConfig cfg = resolve_config(inv);
    SweepSpec spec = cfg.sweep_spec(kind);
    spec.workers = inv.workers;
    const SweepResult result = run_sweep(spec);
    const SweepFiles files = write_sweep(inv.out_dir, spec, result);
    print_sweep_table(result);
    std::printf("wrote %s\n", files.csv.string().c_str());
    return exit_ok;
}

// Trial 0 of the configured seed, every selected scheme on the same channel.
int run_once(const Invocation& inv)
{
    const LoadedConfig cfg = resolve_config(inv);
    const SystemConfig& sys = cfg.system;
    const ChannelSet ch = trial_channel(cfg.sweep.seed, 0, sys);

    json described = to_json(cfg);
    const std::string hash = config_hash(described);
    const fs::path dir = inv.out_dir;

    std::string csv = "scheme,user,distance_m,angle_deg,relay_distance_m,rate_bps_hz,mmse\n";
    std::printf("%-8s %14s %10s %12s %12s\n", "scheme", "sum_rate", "iters", "bs_slack", "relay_slack");
    for (Scheme s : cfg.sweep.schemes) {
        RateReport report;
        if (s == Scheme::wmmse) {
            rng_engine rng(init_seed_for(cfg.sweep.seed, 0));
            const WmmseResult res = run_wmmse(ch, sys, rng);
            report = res.report;
            atomic_write(dir / ("trace_" + hash + ".csv"), trace_csv(res.trace));
            if (inv.verbose) {
                std::printf("  %5s %16s %14s\n", "n", "xi_total_nats", "sum_rate");
                for (const auto& r : res.trace)
                    std::printf("  %5d %16.8f %14.6f\n", r.n, r.xi_total, r.sum_rate);
            }
        } else {
            report = run_trial(s, ch, sys);
        }
        std::printf("%-8s %14.6f %10d %12.3e %12.3e\n", scheme_name(s).c_str(), report.sum_rate, report.iterations_used,
                    report.slack.bs, report.slack.relay);
        for (int k = 0; k < sys.n_users; ++k)
            csv += scheme_name(s) + "," + std::to_string(k) + "," + format_number(ch.users[k].distance_m) + "," +
                   format_number(ch.users[k].angle_deg) + "," + format_number(ch.users[k].relay_distance_m) + "," +
                   format_number(report.per_user_rate[k]) + "," + format_number(report.mmse[k]) + "\n";
    }
    atomic_write(dir / ("run-once_" + hash + ".csv"), csv);
    atomic_write(dir / ("channel_" + hash + ".json"), channel_to_json(ch).dump() + "\n");
    atomic_write(dir / ("run-once_" + hash + ".json"),
                 json{{"config_hash", hash},
                      {"seed", cfg.sweep.seed},
                      {"timestamp", utc_timestamp()},
                      {"code_version", version_string},
                      {"config", described}}
                         .dump(2) +
                     "\n");
    std::printf("wrote %s\n", (dir / ("run-once_" + hash + ".csv")).string().c_str());
    return exit_ok;
}

int validate_config(const Invocation& inv)
{
    const LoadedConfig cfg = resolve_config(inv);
    std::printf("%s\n", to_json(cfg).dump(2).c_str());
    return exit_ok;
}

int dispatch(const Invocation& inv)
{
    if (inv.subcommand == "validate-config")
        return validate_config(inv);
    if (inv.subcommand == "run-once")
        return run_once(inv);
    if (inv.subcommand == "sweep-power")
        return run_sweep_command(inv, SweepKind::power);
    if (inv.subcommand == "sweep-relay")
        return run_sweep_command(inv, SweepKind::relay_location);
    if (inv.subcommand == "trace-convergence")
        return run_sweep_command(inv, SweepKind::iterations);
    throw config_error("unknown subcommand '" + inv.subcommand + "'");
}

// One line on stderr, "relay-wmmse: error[<kind>]: <message>".
int fail(const char* kind, const std::string& what, int code)
{
    std::string msg = what;
    for (auto& c : msg)
        if (c == '\n' || c == '\r')
            c = ' ';
    std::fprintf(stderr, "relay-wmmse: error[%s]: %s\n", kind, msg.c_str());
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relay-aided mmWave multiuser precoding: WMMSE vs. ZF/RZF"};
    app.require_subcommand(1);

    Invocation inv;
    inv.out_dir = default_out_dir();
    inv.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::uint64_t seed = 0;
    int trials = 0;
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"run-once", "Run every selected scheme on one channel realization"},
        {"sweep-power", "Sum rate vs. transmit power (P_bs = P_re)"},
        {"sweep-relay", "Sum rate vs. normalized relay location d_r / d_max"},
        {"trace-convergence", "Mean WMMSE sum rate per iteration for each epsilon"},
        {"validate-config", "Parse, validate and print the resolved configuration"},
    };
    std::vector<CLI::Option*> seed_opts, trial_opts;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("-c,--config", inv.config_path, "Configuration file (JSON); defaults when omitted")
            ->check(CLI::ExistingFile);
        sub->add_option("-o,--out", inv.out_dir, "Output directory (env RELAY_WMMSE_OUT)");
        seed_opts.push_back(sub->add_option("--seed", seed, "Root seed, overrides the config"));
        trial_opts.push_back(sub->add_option("--trials", trials, "Monte Carlo trials, overrides the config"));
        sub->add_option("--scheme", inv.schemes, "Schemes to run: wmmse, rzf, zf or all")->delimiter(',');
        sub->add_option("--workers", inv.workers, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("-v,--verbose", inv.verbose, "Print per-iteration traces");
        sub->callback([&inv, name = std::string(s.name)] { inv.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), exit_config);
    }
    for (auto* o : seed_opts)
        if (o->count() > 0)
            inv.seed = seed;
    for (auto* o : trial_opts)
        if (o->count() > 0)
            inv.trials = trials;

    try {
        return dispatch(inv);
    } catch (const config_error& e) {
        return fail("config", e.what(), exit_config);
    } catch (const domain_error& e) {
        return fail("config", e.what(), exit_config);
    } catch (const numeric_error& e) {
        return fail("numeric", e.what(), exit_numeric);
    } catch (const io_error& e) {
        return fail("io", e.what(), exit_io);
    } catch (const fs::filesystem_error& e) {
        return fail("io", e.what(), exit_io);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), exit_other);
    }
}
