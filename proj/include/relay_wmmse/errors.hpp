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

#ifndef RELAY_WMMSE_ERRORS_HPP
#define RELAY_WMMSE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace relay_wmmse {

// Invalid or inconsistent configuration (bad key, violated invariant).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimension mismatch or other violated precondition of a pure formula.
class contract_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for numerical failures of the optimizer and baselines.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A Hermitian solve hit a singular or ill-conditioned matrix.
class singular_matrix_error : public numeric_error {
public:
    singular_matrix_error(const std::string& what, double rcond)
        : numeric_error(what), rcond_(rcond) {}

    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

// The alternating loop produced a non-finite objective. Carries the
// objective values seen so far.
class divergence_error : public numeric_error {
public:
    divergence_error(const std::string& what, std::vector<double> objective_trace)
        : numeric_error(what), trace_(std::move(objective_trace)) {}

    const std::vector<double>& objective_trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace relay_wmmse

#endif
