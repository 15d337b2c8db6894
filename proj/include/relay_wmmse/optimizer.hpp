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

#ifndef RELAY_WMMSE_OPTIMIZER_HPP
#define RELAY_WMMSE_OPTIMIZER_HPP

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace relay_wmmse {

struct IterationRecord {
    int n = 0;
    double xi_total = 0.0;   // nats
    double sum_rate = 0.0;   // bit/s/Hz
    double bs_slack = 0.0;
    double relay_slack = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct KktResiduals {
    double receiver = 0.0;
    double transmit = 0.0;
    double relay = 0.0;

    double max() const { return std::max({receiver, transmit, relay}); }
};

struct WmmseResult {
    Precoders precoders;      // feasible, full-power pair the report is computed from
    Precoders last_iterate;   // raw output of the final alternating step
    Precoders initial;
    ReceiverState state;      // receivers, weights and multipliers of the final step
    IterationTrace trace;
    RateReport report;
    double initial_sum_rate = 0.0;
};

namespace detail {

// w_i |V_i|^2
inline rvec receiver_energy(const ReceiverState& s)
{
    return s.w.cwiseProduct(s.v_rx.cwiseAbs2());
}

inline void check_state(const ReceiverState& s, const SystemConfig& cfg)
{
    if (s.v_rx.size() != cfg.n_users || s.w.size() != cfg.n_users)
        throw contract_error("receiver state size does not match the user count");
}

// rho_r sum_i w_i |V_i|^2 h_i^H h_i + beta2 I
inline cmat relay_left_matrix(const ReceiverState& s, const ChannelSet& ch, const SystemConfig& cfg)
{
    const rvec e = receiver_energy(s);
    cmat a = cfg.rho_r * ch.h_users.adjoint() * e.asDiagonal() * ch.h_users;
    a.diagonal().array() += s.beta2;
    return a;
}

// rho_s H_sr F F^H H_sr^H + sigma_r^2 I
inline cmat relay_right_matrix(const cmat& f, const ChannelSet& ch, const SystemConfig& cfg)
{
    const cmat hf = ch.h_sr * f;
    cmat b = cfg.rho_s * hf * hf.adjoint();
    b.diagonal().array() += cfg.sigma2_relay();
    return b;
}

// sum_i w_i V_i^* h_i^H f_i^H H_sr^H
inline cmat relay_cross_term(const ReceiverState& s, const cmat& f, const ChannelSet& ch)
{
    const cvec wv = s.w.cast<cplx>().cwiseProduct(s.v_rx.conjugate());
    return ch.h_users.adjoint() * wv.asDiagonal() * (ch.h_sr * f).adjoint();
}

// beta1 I + beta2 rho_s (G H)^H (G H) + rho_s rho_r E^H diag(w |V|^2) E, with E = H_users G H_sr.
inline cmat transmit_matrix(const ReceiverState& s, const cmat& g, const ChannelSet& ch, const SystemConfig& cfg)
{
    const cmat gh = g * ch.h_sr;
    const cmat e = ch.h_users * gh;
    const rvec en = receiver_energy(s);
    cmat m = s.beta2 * cfg.rho_s * gh.adjoint() * gh + cfg.rho_s * cfg.rho_r * e.adjoint() * en.asDiagonal() * e;
    m.diagonal().array() += s.beta1;
    return m;
}

// Right-hand side of the transmit update, column k = w_k V_k^* (h_k G H_sr)^H.
inline cmat transmit_cross_term(const ReceiverState& s, const cmat& g, const ChannelSet& ch)
{
    const cvec wv = s.w.cast<cplx>().cwiseProduct(s.v_rx.conjugate());
    return (ch.h_users * g * ch.h_sr).adjoint() * wv.asDiagonal();
}

inline double relative_gap(const cmat& lhs, const cmat& rhs)
{
    const double scale = std::max(lhs.norm(), rhs.norm());
    if (scale == 0.0)
        return 0.0;
    return (lhs - rhs).norm() / scale;
}

} // namespace detail

// MMSE receivers and the matching optimal weights 1 / eps_min at (p, ch).
inline ReceiverState receiver_update(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    const auto t = link_terms(p, ch, cfg);
    ReceiverState s;
    s.v_rx.resize(cfg.n_users);
    s.w.resize(cfg.n_users);
    for (int k = 0; k < cfg.n_users; ++k) {
        s.v_rx(k) = detail::mmse_receiver(k, t, cfg);
        s.w(k) = optimal_weight(detail::mse(k, s.v_rx(k), t, cfg));
    }
    return s;
}

// beta2 = (rho_r sigma_d^2 / P_re) sum_i w_i |V_i|^2
inline double compute_beta2(const ReceiverState& s, const SystemConfig& cfg)
{
    detail::check_state(s, cfg);
    if (!(cfg.p_re() > 0.0))
        throw domain_error("compute_beta2: relay power budget must be positive");
    return cfg.rho_r * cfg.sigma2_user() / cfg.p_re() * detail::receiver_energy(s).sum();
}

// beta1 = (rho_s sigma_r^2 / P_bs) [rho_r sum_i w_i |V_i|^2 ||h_i G||^2 + beta2 tr(G G^H)]
// Reads s.beta2, so compute_beta2 must run first.
inline double compute_beta1(const ReceiverState& s, const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    detail::check_state(s, cfg);
    check_dimensions(p, ch, cfg);
    if (!(cfg.p_bs() > 0.0))
        throw domain_error("compute_beta1: BS power budget must be positive");
    const rvec hg = (ch.h_users * p.g).rowwise().squaredNorm();
    const double inner = cfg.rho_r * detail::receiver_energy(s).dot(hg) + s.beta2 * p.g.squaredNorm();
    return cfg.rho_s * cfg.sigma2_relay() / cfg.p_bs() * inner;
}

// Closed-form relay precoder for fixed F, receivers, weights and beta2.
inline cmat update_relay_precoder(const ReceiverState& s, const cmat& f, const ChannelSet& ch, const SystemConfig& cfg)
{
    detail::check_state(s, cfg);
    check_dimensions({f, cmat::Zero(cfg.n_relay, cfg.n_relay)}, ch, cfg);
    const cmat left = detail::relay_left_matrix(s, ch, cfg);
    const cmat right = detail::relay_right_matrix(f, ch, cfg);
    const cmat x = hpd_solve(left, detail::relay_cross_term(s, f, ch), "relay left matrix");
    // X B^{-1} = (B^{-1} X^H)^H since B is Hermitian.
    return detail::sqrt_rho(cfg) * hpd_solve(right, x.adjoint(), "relay right matrix").adjoint();
}

// Closed-form transmit precoder (all K columns) for fixed G, receivers,
// weights and multipliers.
inline cmat update_transmit_precoder(const ReceiverState& s, const cmat& g, const ChannelSet& ch,
                                     const SystemConfig& cfg)
{
    detail::check_state(s, cfg);
    check_dimensions({cmat::Zero(cfg.n_tx, cfg.n_users), g}, ch, cfg);
    const cmat m = detail::transmit_matrix(s, g, ch, cfg);
    return detail::sqrt_rho(cfg) * hpd_solve(m, detail::transmit_cross_term(s, g, ch), "transmit matrix");
}

// Relative residuals of the three first-order stationarity conditions of the
// Lagrangian, evaluated at (p, s) as given. Each is ||lhs - rhs|| / max(||lhs||, ||rhs||).
inline KktResiduals kkt_residuals(const Precoders& p, const ReceiverState& s, const ChannelSet& ch,
                                  const SystemConfig& cfg)
{
    detail::check_state(s, cfg);
    const auto t = link_terms(p, ch, cfg);
    const double sr = detail::sqrt_rho(cfg);

    cvec lhs_rx(cfg.n_users), rhs_rx(cfg.n_users);
    for (int k = 0; k < cfg.n_users; ++k) {
        lhs_rx(k) = sr * s.w(k) * std::conj(t.gain(k, k));
        rhs_rx(k) = s.w(k) * detail::total_received_power(k, t, cfg) * s.v_rx(k);
    }

    KktResiduals r;
    r.receiver = detail::relative_gap(lhs_rx, rhs_rx);
    r.transmit = detail::relative_gap(sr * detail::transmit_cross_term(s, p.g, ch),
                                      detail::transmit_matrix(s, p.g, ch, cfg) * p.f);
    r.relay = detail::relative_gap(sr * detail::relay_cross_term(s, p.f, ch),
                                   detail::relay_left_matrix(s, ch, cfg) * p.g *
                                       detail::relay_right_matrix(p.f, ch, cfg));
    return r;
}

// Scales F so the BS constraint holds with equality. A zero F is left as is.
inline cmat scale_to_bs_budget(const cmat& f, const SystemConfig& cfg)
{
    const double used = cfg.rho_s * f.squaredNorm();
    if (used == 0.0)
        return f;
    return f * std::sqrt(cfg.p_bs() / used);
}

// Scales G so the relay constraint holds with equality for the given F.
inline cmat scale_to_relay_budget(const cmat& g, const cmat& f, const ChannelSet& ch, const SystemConfig& cfg)
{
    const double used = relay_power({f, g}, ch, cfg);
    if (used == 0.0)
        return g;
    return g * std::sqrt(cfg.p_re() / used);
}

// F first, then G for that F.
inline Precoders enforce_feasibility(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    Precoders out;
    out.f = scale_to_bs_budget(p.f, cfg);
    out.g = scale_to_relay_budget(p.g, out.f, ch, cfg);
    return out;
}

// Starting point: matched filter toward the end-to-end channel through an
// identity relay (or complex Gaussian when configured), and a scaled-identity
// relay. Both constraints are met with equality.
inline Precoders init_precoders(rng_engine& rng, const ChannelSet& ch, const SystemConfig& cfg)
{
    cmat f;
    if (cfg.algorithm.init == InitMode::random) {
        f.resize(cfg.n_tx, cfg.n_users);
        for (Eigen::Index j = 0; j < f.cols(); ++j)
            for (Eigen::Index i = 0; i < f.rows(); ++i)
                f(i, j) = complex_normal(rng);
    } else {
        f = (ch.h_users * ch.h_sr).adjoint();
    }
    if (f.squaredNorm() == 0.0)
        f = cmat::Identity(cfg.n_tx, cfg.n_users);
    Precoders p;
    p.f = scale_to_bs_budget(f, cfg);
    p.g = scale_to_relay_budget(cmat::Identity(cfg.n_relay, cfg.n_relay), p.f, ch, cfg);
    return p;
}

// Total WMMSE objective sum_k (1 + ln eps_k^min) = K - sum_k R_k (nats).
inline double wmmse_objective(const Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    const auto t = link_terms(p, ch, cfg);
    double xi = 0.0;
    for (int k = 0; k < cfg.n_users; ++k) {
        const double eps = detail::mmse_value(k, t, cfg);
        xi += augmented_wmse(optimal_weight(eps), eps);
    }
    return xi;
}

// One alternating step in the fixed order: receivers, weights, beta2, G,
// beta1, F. Returns the state used for the step (with both multipliers).
inline ReceiverState alternating_step(Precoders& p, const ChannelSet& ch, const SystemConfig& cfg)
{
    ReceiverState s = receiver_update(p, ch, cfg);
    s.beta2 = compute_beta2(s, cfg);
    p.g = update_relay_precoder(s, p.f, ch, cfg);
    s.beta1 = compute_beta1(s, p, ch, cfg);
    p.f = update_transmit_precoder(s, p.g, ch, cfg);
    return s;
}

// Alternating WMMSE loop. Stops once two consecutive total objectives differ
// by at most epsilon, or after n_max steps. Trace slacks are those of the raw
// closed-form step, before any rescaling.
inline WmmseResult run_wmmse(const ChannelSet& ch, const SystemConfig& cfg, rng_engine& rng)
{
    validate(cfg);
    WmmseResult out;
    out.initial = init_precoders(rng, ch, cfg);
    out.initial_sum_rate = sum_rate(out.initial, ch, cfg);

    Precoders p = out.initial;
    double xi_older = 0.0;
    double xi_old = std::numeric_limits<double>::infinity();
    std::vector<double> objective;
    int n = 0;
    while (std::abs(xi_old - xi_older) > cfg.algorithm.epsilon && n < cfg.algorithm.n_max) {
        ++n;
        out.state = alternating_step(p, ch, cfg);
        const auto slack = feasibility_slack(p, ch, cfg);
        if (cfg.algorithm.rescale_iterates)
            p = enforce_feasibility(p, ch, cfg);

        const double xi = all_finite(p.f) && all_finite(p.g) ? wmmse_objective(p, ch, cfg)
                                                             : std::numeric_limits<double>::quiet_NaN();
        objective.push_back(xi);
        if (!std::isfinite(xi))
            throw divergence_error("WMMSE objective became non-finite at iteration " + std::to_string(n), objective);

        out.trace.push_back({n, xi, (cfg.n_users - xi) / std::numbers::ln2, slack.bs, slack.relay, out.state.beta1,
                             out.state.beta2});
        xi_older = xi_old;
        xi_old = xi;
    }

    out.last_iterate = p;
    out.precoders = enforce_feasibility(p, ch, cfg);
    out.report = rate_report(out.precoders, ch, cfg);
    out.report.objective_trace = std::move(objective);
    out.report.iterations_used = n;
    return out;
}

} // namespace relay_wmmse

#endif
