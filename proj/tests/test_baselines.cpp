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

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace relay_wmmse;
using namespace relay_wmmse::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Largest |[H F]_{ki}| / |[H F]_{kk}| over i != k.
double leakage(const cmat& heff, const cmat& f)
{
    const cmat hf = heff * f;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < hf.rows(); ++k)
        for (Eigen::Index i = 0; i < hf.cols(); ++i)
            if (i != k)
                worst = std::max(worst, std::abs(hf(k, i)) / std::abs(hf(k, k)));
    return worst;
}

} // namespace

TEST_CASE("amplify-and-forward relay", "[baselines]")
{
    auto cfg = scalar_config();
    const auto ch = scalar_channel();
    const cmat f = cmat::Constant(1, 1, 1.0);
    const cmat g = af_relay_precoder(ch, f, cfg);
    CHECK_THAT(std::abs(g(0, 0)), WithinAbs(1.0, 1e-12));
    CHECK(std::abs(feasibility_slack({f, g}, ch, cfg).relay) < 1e-9);

    auto doubled = cfg;
    doubled.p_re_dbm = mw_to_dbm(4.0);
    CHECK_THAT(std::abs(af_relay_precoder(ch, f, doubled)(0, 0)), WithinAbs(std::sqrt(2.0), 1e-12));

    cfg.sigma2_relay_mw = 0.0;
    CHECK_THROWS_AS(af_relay_precoder(ch, cmat::Zero(1, 1), cfg), numeric_error);
}

TEST_CASE("zero forcing on a diagonal channel", "[baselines]")
{
    auto cfg = generic_config(2, 2, 2);
    cfg.p_bs_dbm = mw_to_dbm(5.0);
    cmat heff = cmat::Zero(2, 2);
    heff(0, 0) = 1.0;
    heff(1, 1) = 2.0;
    const cmat f = zf_precoder(heff, cfg);
    CHECK(std::abs(f(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(f(1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(f(0, 1)) < 1e-12);
    CHECK(std::abs(f(1, 0)) < 1e-12);
    CHECK((heff * f - 2.0 * cmat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("zero forcing nulls interference on generic channels", "[baselines]")
{
    rng_engine rng(1);
    const auto cfg = generic_config(8, 8, 4);
    for (int t = 0; t < 20; ++t) {
        const cmat heff = gaussian_matrix(rng, 4, 8);
        const cmat f = zf_precoder(heff, cfg);
        CHECK(leakage(heff, f) < 1e-8);
        CHECK_THAT(cfg.rho_s * f.squaredNorm(), WithinRel(cfg.p_bs(), 1e-12));
    }
}

TEST_CASE("single-user zero forcing is the matched filter", "[baselines]")
{
    rng_engine rng(2);
    const auto cfg = generic_config(6, 6, 1);
    cmat heff = gaussian_matrix(rng, 1, 6);
    heff /= heff.norm();
    const cmat f = zf_precoder(heff, cfg);
    const cmat mf = heff.adjoint() * std::sqrt(cfg.p_bs() / cfg.rho_s);
    CHECK((f - mf).norm() < 1e-12);
}

TEST_CASE("regularized zero forcing limits", "[baselines]")
{
    rng_engine rng(3);
    const auto cfg = generic_config(8, 8, 4);
    for (int t = 0; t < 10; ++t) {
        const cmat heff = gaussian_matrix(rng, 4, 8);
        const cmat zf = zf_precoder(heff, cfg);
        CHECK((rzf_precoder(heff, cfg, 0.0) - zf).norm() < 1e-9 * zf.norm());
        CHECK((rzf_precoder(heff, cfg, 1e-9) - zf).norm() < 1e-6 * zf.norm());

        const cmat big = rzf_precoder(heff, cfg, 1e12);
        const cmat mf = heff.adjoint();
        for (Eigen::Index k = 0; k < 4; ++k) {
            const cvec a = big.col(k).normalized();
            const cvec b = mf.col(k).normalized();
            CHECK(1.0 - std::abs(a.dot(b)) < 1e-6);
        }
    }
    CHECK_THROWS_AS(rzf_precoder(gaussian_matrix(rng, 2, 4), cfg, -1.0), domain_error);
}

TEST_CASE("baselines meet both budgets with equality", "[baselines]")
{
    const auto cfg = mmwave_config(8, 4);
    for (int t = 0; t < 10; ++t) {
        rng_engine chan = trial_rng(4, stream::channel, t);
        const auto ch = sample_channel_set(chan, cfg);
        for (BaselineKind kind : {BaselineKind::zf, BaselineKind::rzf}) {
            const auto r = run_baseline(kind, ch, cfg);
            CHECK(std::abs(r.report.slack.bs) < 1e-6);
            CHECK(std::abs(r.report.slack.relay) < 1e-6);
        }
    }
}

TEST_CASE("single-user baselines coincide", "[baselines]")
{
    const auto cfg = mmwave_config(8, 1);
    for (int t = 0; t < 5; ++t) {
        rng_engine chan = trial_rng(5, stream::channel, t);
        const auto ch = sample_channel_set(chan, cfg);
        CHECK_THAT(run_baseline(BaselineKind::zf, ch, cfg).report.sum_rate,
                   WithinAbs(run_baseline(BaselineKind::rzf, ch, cfg).report.sum_rate, 1e-9));
    }
}

TEST_CASE("regularization beats zero forcing when overloaded", "[baselines]")
{
    const auto cfg = mmwave_config(16, 16);
    int wins = 0;
    double zf_total = 0.0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        rng_engine chan = trial_rng(6, stream::channel, t);
        const auto ch = sample_channel_set(chan, cfg);
        const double zf = run_trial(Scheme::zf, ch, cfg).sum_rate;
        const double rzf = run_trial(Scheme::rzf, ch, cfg).sum_rate;
        zf_total += zf;
        wins += rzf > zf;
    }
    CHECK(wins >= 95);
    CHECK(zf_total / trials < 1.0);
}

TEST_CASE("WMMSE beats regularized zero forcing", "[baselines]")
{
    const auto cfg = mmwave_config(8, 4);
    int wins = 0;
    for (int t = 0; t < 100; ++t) {
        rng_engine chan = trial_rng(7, stream::channel, t);
        const auto ch = sample_channel_set(chan, cfg);
        wins += run_trial(Scheme::wmmse, ch, cfg, init_seed_for(7, t)).sum_rate >=
                run_trial(Scheme::rzf, ch, cfg).sum_rate;
    }
    CHECK(wins >= 95);
}
