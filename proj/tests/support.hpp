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

// Shared fixtures for the unit tests and the acceptance runner.

#ifndef RELAY_WMMSE_TESTS_SUPPORT_HPP
#define RELAY_WMMSE_TESTS_SUPPORT_HPP

#include "relay_wmmse/relay_wmmse.hpp"

namespace relay_wmmse::testing {

// N_t = N_r = K = 1, unit gains and noise, P_bs = 1 mW, P_re = 2 mW.
inline SystemConfig scalar_config()
{
    SystemConfig c;
    c.n_tx = c.n_relay = c.n_users = 1;
    c.p_bs_dbm = mw_to_dbm(1.0);
    c.p_re_dbm = mw_to_dbm(2.0);
    c.sigma2_relay_mw = 1.0;
    c.sigma2_user_mw = 1.0;
    return c;
}

inline ChannelSet scalar_channel()
{
    ChannelSet ch;
    ch.h_sr = cmat::Constant(1, 1, 1.0);
    ch.h_users = cmat::Constant(1, 1, 1.0);
    ch.users = {UserPosition{50.0, 0.0, 1.0}};
    return ch;
}

inline Precoders scalar_precoders(double f = 1.0, double g = 1.0)
{
    return {cmat::Constant(1, 1, f), cmat::Constant(1, 1, g)};
}

inline cmat gaussian_matrix(rng_engine& rng, Eigen::Index rows, Eigen::Index cols)
{
    cmat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = complex_normal(rng);
    return m;
}

// Unit-variance Rayleigh channels with O(1) noise, so every term in the
// formulas is of comparable size.
inline SystemConfig generic_config(int n_tx, int n_relay, int n_users)
{
    SystemConfig c;
    c.n_tx = n_tx;
    c.n_relay = n_relay;
    c.n_users = n_users;
    c.p_bs_dbm = 10.0;
    c.p_re_dbm = 10.0;
    c.sigma2_relay_mw = 1.0;
    c.sigma2_user_mw = 1.0;
    return c;
}

inline ChannelSet generic_channel(rng_engine& rng, const SystemConfig& c)
{
    ChannelSet ch;
    ch.h_sr = gaussian_matrix(rng, c.n_relay, c.n_tx);
    ch.h_users = gaussian_matrix(rng, c.n_users, c.n_relay);
    ch.users.assign(c.n_users, UserPosition{100.0, 0.0, 50.0});
    return ch;
}

inline Precoders generic_precoders(rng_engine& rng, const SystemConfig& c)
{
    return {gaussian_matrix(rng, c.n_tx, c.n_users), gaussian_matrix(rng, c.n_relay, c.n_relay)};
}

// Default mmWave scenario with the given array and user sizes.
inline SystemConfig mmwave_config(int n_antennas, int n_users, double power_dbm = 20.0)
{
    SystemConfig c;
    c.n_tx = c.n_relay = n_antennas;
    c.n_users = n_users;
    c.p_bs_dbm = c.p_re_dbm = power_dbm;
    return c;
}

} // namespace relay_wmmse::testing

#endif
