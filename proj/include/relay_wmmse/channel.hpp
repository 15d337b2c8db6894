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

#ifndef RELAY_WMMSE_CHANNEL_HPP
#define RELAY_WMMSE_CHANNEL_HPP

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace relay_wmmse {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Unit-norm ULA response: a_m = exp(-j 2 pi (d/lambda) m cos(angle)) / sqrt(n), m = 0..n-1.
inline cvec steering_vector(int n, double angle_deg, double spacing_ratio)
{
    if (n < 1)
        throw domain_error("steering_vector: antenna count must be >= 1");
    const double phase = -2.0 * std::numbers::pi * spacing_ratio * std::cos(deg_to_rad(angle_deg));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    cvec a(n);
    for (int m = 0; m < n; ++m)
        a(m) = std::polar(norm, phase * m);
    return a;
}

// 3GPP UMi street-canyon LoS path loss in dB; distance in m, carrier in GHz.
inline double path_loss_db(double distance_m, double fc_ghz)
{
    if (!(distance_m >= 1.0))
        throw domain_error("path_loss_db: distance must be >= 1 m");
    if (!(fc_ghz > 0.0))
        throw domain_error("path_loss_db: carrier frequency must be positive");
    return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(fc_ghz);
}

struct LinkBudget {
    double path_loss_db = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;

    double power_db() const { return tx_gain_dbi + rx_gain_dbi - path_loss_db; }
    // Linear amplitude scale 10^((gains - PL) / 20).
    double amplitude() const { return std::pow(10.0, power_db() / 20.0); }
    double power() const { return std::pow(10.0, power_db() / 10.0); }
};

// BS -> relay: both ends carry array gain.
inline LinkBudget bs_relay_budget(const SystemConfig& cfg)
{
    return {path_loss_db(cfg.geometry.d_relay_m, cfg.channel.fc_ghz), cfg.link.bs_gain_dbi, cfg.link.relay_gain_dbi};
}

// Relay -> user: single-antenna users have 0 dBi.
inline LinkBudget relay_user_budget(const SystemConfig& cfg, double distance_m)
{
    return {path_loss_db(distance_m, cfg.channel.fc_ghz), cfg.link.relay_gain_dbi, 0.0};
}

// LoS distance between the relay (on the BS boresight at d_relay) and a user
// at polar position (distance, angle) around the BS. Clamped to the 1 m
// validity floor of the path loss model.
inline double relay_user_distance(double user_distance_m, double user_angle_deg, double d_relay_m)
{
    const double d2 = user_distance_m * user_distance_m + d_relay_m * d_relay_m -
                      2.0 * user_distance_m * d_relay_m * std::cos(deg_to_rad(user_angle_deg));
    return std::max(1.0, std::sqrt(std::max(d2, 0.0)));
}

// Uniform user drop: distances on [d_min, d_max], angles on [theta_min, theta_max].
inline std::vector<UserPosition> place_users(rng_engine& rng, const SystemConfig& cfg)
{
    const auto& g = cfg.geometry;
    std::vector<UserPosition> users(cfg.n_users);
    for (auto& u : users) {
        u.distance_m = uniform(rng, g.d_min_m, g.d_max_m);
        u.angle_deg = uniform(rng, g.theta_min_deg, g.theta_max_deg);
        u.relay_distance_m = relay_user_distance(u.distance_m, u.angle_deg, g.d_relay_m);
    }
    return users;
}

struct Ray {
    double aoa_deg = 0.0;
    double aod_deg = 0.0;
    cplx gain;
};

struct ClusterDraw {
    double center_aoa_deg = 0.0;
    double center_aod_deg = 0.0;
    std::vector<Ray> rays;
};

// Cluster centers uniform over a window of width cluster_spread around the
// boresight of each end; rays uniform within +-ray_spread/2 of their center.
// The number of draws depends only on the cluster and ray counts.
inline std::vector<ClusterDraw> draw_clusters(rng_engine& rng, int n_clusters, int n_rays, double aoa_boresight_deg,
                                              double aod_boresight_deg, const ChannelStats& stats)
{
    const double hc = 0.5 * stats.cluster_spread_deg;
    const double hr = 0.5 * stats.ray_spread_deg;
    std::vector<ClusterDraw> clusters(n_clusters);
    for (auto& c : clusters) {
        c.center_aoa_deg = uniform(rng, aoa_boresight_deg - hc, aoa_boresight_deg + hc);
        c.center_aod_deg = uniform(rng, aod_boresight_deg - hc, aod_boresight_deg + hc);
        c.rays.resize(n_rays);
        for (auto& r : c.rays) {
            r.aoa_deg = c.center_aoa_deg + uniform(rng, -hr, hr);
            r.aod_deg = c.center_aod_deg + uniform(rng, -hr, hr);
            r.gain = complex_normal(rng);
        }
    }
    return clusters;
}

// Clustered BS -> relay matrix (N_r x N_t). The relay sits on the BS boresight
// (0 deg), so both AoA and AoD supports are centered there.
inline cmat bs_relay_channel(const std::vector<ClusterDraw>& clusters, const SystemConfig& cfg)
{
    const auto& st = cfg.channel;
    const double paths = static_cast<double>(clusters.size() * (clusters.empty() ? 0 : clusters.front().rays.size()));
    const double scale = std::sqrt(static_cast<double>(cfg.n_tx) * cfg.n_relay / paths) * bs_relay_budget(cfg).amplitude();
    cmat h = cmat::Zero(cfg.n_relay, cfg.n_tx);
    for (const auto& c : clusters)
        for (const auto& r : c.rays)
            h += (scale * r.gain) * steering_vector(cfg.n_relay, r.aoa_deg, st.spacing_ratio) *
                 steering_vector(cfg.n_tx, r.aod_deg, st.spacing_ratio).adjoint();
    return h;
}

inline cmat sample_bs_relay_channel(rng_engine& rng, const SystemConfig& cfg)
{
    const auto& st = cfg.channel;
    return bs_relay_channel(draw_clusters(rng, st.clusters_sr, st.rays_sr, 0.0, 0.0, st), cfg);
}

// Relay -> user row vector (1 x N_r) with clusters centered on the user's
// angular position. Only the AoD of each ray is used.
inline crow relay_user_channel(const std::vector<ClusterDraw>& clusters, const SystemConfig& cfg, double distance_m)
{
    const auto& st = cfg.channel;
    const double paths = static_cast<double>(clusters.size() * (clusters.empty() ? 0 : clusters.front().rays.size()));
    const double scale = std::sqrt(cfg.n_relay / paths) * relay_user_budget(cfg, distance_m).amplitude();
    crow h = crow::Zero(cfg.n_relay);
    for (const auto& c : clusters)
        for (const auto& r : c.rays)
            h += (scale * r.gain) * steering_vector(cfg.n_relay, r.aod_deg, st.spacing_ratio).adjoint();
    return h;
}

inline crow sample_relay_user_channel(rng_engine& rng, const SystemConfig& cfg, double distance_m,
                                      double user_angle_deg)
{
    if (!(distance_m >= 1.0))
        throw domain_error("sample_relay_user_channel: distance must be >= 1 m");
    const auto& st = cfg.channel;
    return relay_user_channel(draw_clusters(rng, st.clusters_rd, st.rays_rd, 0.0, user_angle_deg, st), cfg,
                              distance_m);
}

// One full realization: user drop, BS -> relay matrix, then one row per user.
inline ChannelSet sample_channel_set(rng_engine& rng, const SystemConfig& cfg)
{
    ChannelSet ch;
    ch.users = place_users(rng, cfg);
    ch.h_sr = sample_bs_relay_channel(rng, cfg);
    ch.h_users.resize(cfg.n_users, cfg.n_relay);
    for (int k = 0; k < cfg.n_users; ++k)
        ch.h_users.row(k) = sample_relay_user_channel(rng, cfg, ch.users[k].relay_distance_m, ch.users[k].angle_deg);
    return ch;
}

} // namespace relay_wmmse

#endif
