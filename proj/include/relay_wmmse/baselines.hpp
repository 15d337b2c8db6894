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

#ifndef RELAY_WMMSE_BASELINES_HPP
#define RELAY_WMMSE_BASELINES_HPP

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "optimizer.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace relay_wmmse {

enum class BaselineKind { zf, rzf };

// Singular values below this fraction of the largest are dropped by ZF.
inline constexpr double zf_pinv_tolerance = 1e-10;

// Pure amplify-and-forward relay c * I, with c > 0 meeting the relay budget
// with equality for the given F.
inline cmat af_relay_precoder(const ChannelSet& ch, const cmat& f, const SystemConfig& cfg)
{
    const cmat eye = cmat::Identity(cfg.n_relay, cfg.n_relay);
    const double used = relay_power({f, eye}, ch, cfg);
    if (!(used > 0.0) || !std::isfinite(used))
        throw numeric_error("af_relay_precoder: relay receives no power, cannot scale");
    return eye * std::sqrt(cfg.p_re() / used);
}

// End-to-end K x N_t channel, row k = h_k G0 H_sr.
inline cmat effective_channel(const ChannelSet& ch, const cmat& g0)
{
    return ch.h_users * g0 * ch.h_sr;
}

inline cmat zf_precoder(const cmat& heff, const SystemConfig& cfg)
{
    if (heff.rows() > heff.cols())
        throw contract_error("zf_precoder: needs K <= N_t");
    return scale_to_bs_budget(pseudo_inverse(heff, zf_pinv_tolerance), cfg);
}

// Heff^H (Heff Heff^H + reg I)^{-1}, evaluated through the SVD of Heff so that
// reg = 0 reduces to the thresholded pseudo-inverse.
inline cmat rzf_precoder(const cmat& heff, const SystemConfig& cfg, double reg)
{
    if (heff.rows() > heff.cols())
        throw contract_error("rzf_precoder: needs K <= N_t");
    if (!(reg >= 0.0))
        throw domain_error("rzf_precoder: regularization must be nonnegative");
    Eigen::BDCSVD<cmat> svd(heff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const rvec& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? zf_pinv_tolerance * s(0) : 0.0;
    rvec d = rvec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (reg > 0.0)
            d(i) = s(i) / (s(i) * s(i) + reg);
        else if (s(i) > cutoff)
            d(i) = 1.0 / s(i);
    }
    return scale_to_bs_budget(svd.matrixV() * d.asDiagonal() * svd.matrixU().adjoint(), cfg);
}

inline cmat rzf_precoder(const cmat& heff, const SystemConfig& cfg)
{
    return rzf_precoder(heff, cfg, cfg.rzf_reg());
}

struct BaselineResult {
    Precoders precoders;
    RateReport report;
};

// AF relay sized for a provisional matched-filter F, baseline F on the
// resulting end-to-end channel, then one relay rescale for the final F.
inline BaselineResult run_baseline(BaselineKind kind, const ChannelSet& ch, const SystemConfig& cfg)
{
    validate(cfg);
    cmat provisional = (ch.h_users * ch.h_sr).adjoint();
    if (provisional.squaredNorm() == 0.0)
        provisional = cmat::Identity(cfg.n_tx, cfg.n_users);
    provisional = scale_to_bs_budget(provisional, cfg);

    const cmat g0 = af_relay_precoder(ch, provisional, cfg);
    const cmat heff = effective_channel(ch, g0);
    BaselineResult r;
    r.precoders.f = kind == BaselineKind::zf ? zf_precoder(heff, cfg) : rzf_precoder(heff, cfg);
    r.precoders.g = af_relay_precoder(ch, r.precoders.f, cfg);
    r.report = rate_report(r.precoders, ch, cfg);
    return r;
}

} // namespace relay_wmmse

#endif
