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

#ifndef RELAY_WMMSE_MODEL_HPP
#define RELAY_WMMSE_MODEL_HPP

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace relay_wmmse {

struct UserPosition {
    double distance_m = 0.0;        // from the BS
    double angle_deg = 0.0;         // angular position seen from the BS
    double relay_distance_m = 0.0;  // LoS distance relay -> user
};

// One channel realization. Row k of h_users is the relay -> user k channel h_k.
struct ChannelSet {
    cmat h_sr;      // N_r x N_t
    cmat h_users;   // K x N_r
    std::vector<UserPosition> users;

    int n_tx() const { return static_cast<int>(h_sr.cols()); }
    int n_relay() const { return static_cast<int>(h_sr.rows()); }
    int n_users() const { return static_cast<int>(h_users.rows()); }
};

struct Precoders {
    cmat f;   // N_t x K, column k is f_k
    cmat g;   // N_r x N_r
};

struct ReceiverState {
    cvec v_rx;        // scalar receivers V_k
    rvec w;           // WMSE weights v_k
    double beta1 = 0.0;
    double beta2 = 0.0;
};

struct FeasibilitySlack {
    double bs = 0.0;      // (P_bs - used) / P_bs; negative means violation
    double relay = 0.0;
};

struct RateReport {
    std::vector<double> per_user_rate;   // bit/s/Hz
    double sum_rate = 0.0;
    std::vector<double> mmse;
    std::vector<double> objective_trace; // nats
    int iterations_used = 0;
    FeasibilitySlack slack;
};

inline void check_dimensions(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    const auto nt = cfg.n_tx, nr = cfg.n_relay, k = cfg.n_users;
    if (ch.h_sr.rows() != nr || ch.h_sr.cols() != nt || ch.h_users.rows() != k || ch.h_users.cols() != nr)
        throw contract_error("channel dimensions do not match the configuration");
    if (p.f.rows() != nt || p.f.cols() != k || p.g.rows() != nr || p.g.cols() != nr)
        throw contract_error("precoder dimensions do not match the configuration");
}

inline void check_user(int k, const SystemConfig& cfg)
{
    if (k < 0 || k >= cfg.n_users)
        throw contract_error("user index " + std::to_string(k) + " out of range");
}

// Per-realization link terms shared by all formulas:
//   gain(k, i)      = h_k G H_sr f_i
//   relay_noise(k)  = ||h_k G||^2
struct LinkTerms {
    cmat gain;
    rvec relay_noise;
};

inline LinkTerms link_terms(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_dimensions(p, ch, cfg);
    const cmat hg = ch.h_users * p.g;
    return {hg * ch.h_sr * p.f, hg.rowwise().squaredNorm()};
}

namespace detail {

inline double sqrt_rho(const SystemConfig& cfg) { return std::sqrt(cfg.rho_s * cfg.rho_r); }

// Received power at user k excluding its own signal.
inline double effective_noise(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    const double rho = cfg.rho_s * cfg.rho_r;
    double interference = 0.0;
    for (Eigen::Index i = 0; i < t.gain.cols(); ++i)
        if (i != k)
            interference += std::norm(t.gain(k, i));
    return rho * interference + cfg.rho_r * cfg.sigma2_relay() * t.relay_noise(k) + cfg.sigma2_user();
}

inline double total_received_power(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    const double rho = cfg.rho_s * cfg.rho_r;
    return rho * t.gain.row(k).squaredNorm() + cfg.rho_r * cfg.sigma2_relay() * t.relay_noise(k) + cfg.sigma2_user();
}

inline double sinr(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    return cfg.rho_s * cfg.rho_r * std::norm(t.gain(k, k)) / effective_noise(k, t, cfg);
}

inline double mse(int k, cplx v, const LinkTerms& t, const SystemConfig& cfg)
{
    return total_received_power(k, t, cfg) * std::norm(v) - 2.0 * sqrt_rho(cfg) * std::real(v * t.gain(k, k)) + 1.0;
}

inline cplx mmse_receiver(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    const cplx a = t.gain(k, k);
    return sqrt_rho(cfg) * std::conj(a) / (cfg.rho_s * cfg.rho_r * std::norm(a) + effective_noise(k, t, cfg));
}

inline double mmse_value(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    return 1.0 / (1.0 + sinr(k, t, cfg));
}

inline double rate_nats(int k, const LinkTerms& t, const SystemConfig& cfg)
{
    return std::log1p(sinr(k, t, cfg));
}

} // namespace detail

// sigma_k^2: multiuser interference + forwarded relay noise + user noise.
inline double effective_noise_variance(int k, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_user(k, cfg);
    return detail::effective_noise(k, link_terms(p, ch, cfg), cfg);
}

// E|s_k - v y_k|^2 for an arbitrary scalar receiver v.
inline double mse(int k, cplx v, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_user(k, cfg);
    return detail::mse(k, v, link_terms(p, ch, cfg), cfg);
}

inline cplx mmse_receiver(int k, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_user(k, cfg);
    return detail::mmse_receiver(k, link_terms(p, ch, cfg), cfg);
}

inline double mmse_value(int k, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_user(k, cfg);
    return detail::mmse_value(k, link_terms(p, ch, cfg), cfg);
}

// Achievable rate of user k in bit/s/Hz.
inline double user_rate(int k, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    check_user(k, cfg);
    return detail::rate_nats(k, link_terms(p, ch, cfg), cfg) / std::numbers::ln2;
}

inline double sum_rate(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    const auto t = link_terms(p, ch, cfg);
    double total = 0.0;
    for (int k = 0; k < cfg.n_users; ++k)
        total += detail::rate_nats(k, t, cfg);
    return total / std::numbers::ln2;
}

// xi = w * eps - ln(w).
inline double augmented_wmse(double weight, double eps)
{
    if (!(weight > 0.0))
        throw domain_error("augmented_wmse: weight must be positive");
    return weight * eps - std::log(weight);
}

inline double optimal_weight(double eps_min)
{
    if (!(eps_min > 0.0))
        throw domain_error("optimal_weight: MMSE value must be positive");
    return 1.0 / eps_min;
}

inline double bs_power(const Precoders& p, const SystemConfig& cfg)
{
    return cfg.rho_s * p.f.squaredNorm();
}

inline double relay_power(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    return cfg.rho_r * (cfg.rho_s * (p.g * ch.h_sr * p.f).squaredNorm() + cfg.sigma2_relay() * p.g.squaredNorm());
}

inline FeasibilitySlack feasibility_slack(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    return {(cfg.p_bs() - bs_power(p, cfg)) / cfg.p_bs(), (cfg.p_re() - relay_power(p, ch, cfg)) / cfg.p_re()};
}

// Per-user rates and MMSE values at (p, ch).
inline RateReport rate_report(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    const auto t = link_terms(p, ch, cfg);
    RateReport r;
    r.per_user_rate.reserve(cfg.n_users);
    r.mmse.reserve(cfg.n_users);
    for (int k = 0; k < cfg.n_users; ++k) {
        const double rate = detail::rate_nats(k, t, cfg) / std::numbers::ln2;
        r.per_user_rate.push_back(rate);
        r.mmse.push_back(detail::mmse_value(k, t, cfg));
        r.sum_rate += rate;
    }
    r.slack = feasibility_slack(p, ch, cfg);
    return r;
}

} // namespace relay_wmmse

#endif
