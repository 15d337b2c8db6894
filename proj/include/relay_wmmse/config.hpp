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

#ifndef RELAY_WMMSE_CONFIG_HPP
#define RELAY_WMMSE_CONFIG_HPP

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace relay_wmmse {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Thermal noise floor of the receiver, thermal + 10 log10(B) + NF, in dBm.
inline double noise_power_dbm(double bandwidth_hz, double noise_figure_db, double thermal_dbm_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw domain_error("noise_power_dbm: bandwidth must be positive");
    return thermal_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

struct Geometry {
    double theta_min_deg = -60.0;
    double theta_max_deg = 60.0;
    double d_min_m = 50.0;
    double d_max_m = 150.0;
    double d_relay_m = 50.0;   // relay distance from the BS along boresight
};

struct ChannelStats {
    int clusters_sr = 4;
    int clusters_rd = 4;
    int rays_sr = 5;
    int rays_rd = 5;
    double cluster_spread_deg = 40.0;
    double ray_spread_deg = 10.0;
    double fc_ghz = 28.0;
    double spacing_ratio = 0.5;   // element spacing d / lambda
};

struct LinkBudgetParams {
    double bs_gain_dbi = 8.0;
    double relay_gain_dbi = 8.0;
    double noise_figure_db = 9.0;
    double bandwidth_hz = 100e6;
    double thermal_dbm_hz = -174.0;

    double noise_dbm() const { return noise_power_dbm(bandwidth_hz, noise_figure_db, thermal_dbm_hz); }
};

enum class InitMode { matched_filter, random };

struct AlgorithmParams {
    double epsilon = 1e-3;
    int n_max = 200;
    InitMode init = InitMode::matched_filter;
    // Rescale F and G onto both power budgets after every alternating step.
    // When false the closed-form steps run unprojected and feasibility is
    // only restored once, after the loop.
    bool rescale_iterates = true;
};

struct SystemConfig {
    int n_tx = 8;
    int n_relay = 8;
    int n_users = 8;
    double rho_s = 1.0;
    double rho_r = 1.0;
    double p_bs_dbm = 20.0;
    double p_re_dbm = 20.0;
    // Linear noise variances in mW. Empty means "derive from the link budget".
    std::optional<double> sigma2_relay_mw;
    std::optional<double> sigma2_user_mw;
    Geometry geometry;
    ChannelStats channel;
    LinkBudgetParams link;
    AlgorithmParams algorithm;
    // RZF diagonal loading; empty means K * sigma2_user / P_bs.
    std::optional<double> rzf_regularization;

    double p_bs() const { return dbm_to_mw(p_bs_dbm); }
    double p_re() const { return dbm_to_mw(p_re_dbm); }
    double sigma2_relay() const { return sigma2_relay_mw.value_or(dbm_to_mw(link.noise_dbm())); }
    double sigma2_user() const { return sigma2_user_mw.value_or(dbm_to_mw(link.noise_dbm())); }
    double rzf_reg() const
    {
        return rzf_regularization.value_or(n_users * sigma2_user() / p_bs());
    }
};

// Throws config_error naming the first violated invariant.
inline void validate(const SystemConfig& c)
{
    auto fail = [](const std::string& msg) { throw config_error("invalid config: " + msg); };
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };

    if (c.n_tx < 1 || c.n_relay < 1 || c.n_users < 1)
        fail("antenna and user counts must be >= 1");
    if (c.n_users > std::min(c.n_tx, c.n_relay))
        fail("K <= min(N_t, N_r) violated (n_users=" + std::to_string(c.n_users) + ", n_tx=" +
             std::to_string(c.n_tx) + ", n_relay=" + std::to_string(c.n_relay) + ")");
    if (!positive(c.rho_s) || !positive(c.rho_r))
        fail("rho_s and rho_r must be positive");
    if (!std::isfinite(c.p_bs_dbm) || !std::isfinite(c.p_re_dbm) || !positive(c.p_bs()) || !positive(c.p_re()))
        fail("power budgets must be finite and positive after dBm conversion");
    if (!positive(c.link.bandwidth_hz))
        fail("bandwidth must be positive");
    if (!positive(c.sigma2_relay()) || !positive(c.sigma2_user()))
        fail("noise variances must be positive");

    const auto& g = c.geometry;
    if (!(g.d_min_m <= g.d_max_m))
        fail("d_min <= d_max violated");
    if (!(g.theta_min_deg <= g.theta_max_deg))
        fail("theta_min <= theta_max violated");
    if (!(g.d_min_m >= 1.0))
        fail("d_min must be >= 1 m");
    if (!(g.d_relay_m >= 1.0))
        fail("relay distance must be >= 1 m");

    const auto& ch = c.channel;
    if (ch.clusters_sr < 1 || ch.clusters_rd < 1 || ch.rays_sr < 1 || ch.rays_rd < 1)
        fail("cluster and ray counts must be >= 1");
    if (!(ch.cluster_spread_deg >= 0.0) || !(ch.ray_spread_deg >= 0.0))
        fail("angular spreads must be nonnegative");
    if (!positive(ch.fc_ghz) || !positive(ch.spacing_ratio))
        fail("carrier frequency and element spacing must be positive");

    if (!positive(c.algorithm.epsilon))
        fail("epsilon > 0 violated");
    if (c.algorithm.n_max < 1)
        fail("n_max >= 1 violated");
    if (c.rzf_regularization && !(*c.rzf_regularization >= 0.0))
        fail("RZF regularization must be nonnegative");
}

} // namespace relay_wmmse

#endif
