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

#ifndef RELAY_WMMSE_RELAY_WMMSE_HPP
#define RELAY_WMMSE_RELAY_WMMSE_HPP

#include "baselines.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "optimizer.hpp"
#include "rng.hpp"

#endif
