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

#ifndef RELAY_WMMSE_LINALG_HPP
#define RELAY_WMMSE_LINALG_HPP

#include "errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <string>

namespace relay_wmmse {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;      // column vector
using crow = Eigen::RowVectorXcd;   // row vector
using rvec = Eigen::VectorXd;

// Matrices whose estimated condition number exceeds this are rejected.
inline constexpr double max_condition_number = 1e12;

// Solves A X = B for Hermitian positive definite A by Cholesky factorization.
// Only the lower triangle of A is read. Throws singular_matrix_error when the
// factorization fails or the reciprocal condition estimate is below
// 1 / max_condition_number. `what` names the matrix in the diagnostic.
inline cmat hpd_solve(const cmat& a, const cmat& b, const std::string& what)
{
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw contract_error("hpd_solve: dimension mismatch for " + what);

    Eigen::LLT<cmat> llt(a);
    if (llt.info() != Eigen::Success)
        throw singular_matrix_error(what + " is not positive definite", 0.0);
    const double rc = llt.rcond();
    if (!(rc >= 1.0 / max_condition_number))
        throw singular_matrix_error(what + " is ill-conditioned (rcond=" + std::to_string(rc) + ")", rc);
    return llt.solve(b);
}

// Moore-Penrose pseudo-inverse; singular values below rel_tol * sigma_max are
// treated as zero.
inline cmat pseudo_inverse(const cmat& a, double rel_tol)
{
    Eigen::BDCSVD<cmat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const rvec& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? rel_tol * s(0) : 0.0;
    rvec s_inv = rvec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff)
            s_inv(i) = 1.0 / s(i);
    return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
}

inline bool all_finite(const cmat& m) { return m.allFinite(); }

} // namespace relay_wmmse

#endif
