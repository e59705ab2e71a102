// SPDX-License-Identifier: Apache-2.0
//
// stabsim: multiuser MIMO simulation for LoS-dominant LEO satellite downlinks
// Copyright (C) 2026 The stabsim Authors
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

#pragma once

#include "stabsim/common.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>

namespace stabsim::linalg
{

// Max-abs deviation from Hermitian symmetry, relative to the largest entry.
inline double hermitian_defect(const CMatrix &a)
{
    if (a.size() == 0)
        return 0.0;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

inline CMatrix symmetrize(const CMatrix &a)
{
    CMatrix s = 0.5 * (a + a.adjoint());
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        s(i, i) = cplx(s(i, i).real(), 0.0);
    return s;
}

// Ascending eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd eigenvalues(const CMatrix &a)
{
    if (a.rows() != a.cols())
        throw InvalidDimension("eigenvalues: matrix is not square");
    if (a.rows() == 0)
        return Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("eigenvalues: Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

// tr(A^{-1}) through a Cholesky solve against the identity. Returns false if
// the factorization breaks down (A not numerically positive definite).
inline bool trace_inverse(const CMatrix &a, double &trace)
{
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        return false;
    const CMatrix inv = llt.solve(CMatrix::Identity(a.rows(), a.cols()));
    double t = 0.0;
    for (Eigen::Index i = 0; i < inv.rows(); ++i)
        t += inv(i, i).real();
    if (!std::isfinite(t) || t <= 0.0)
        return false;
    trace = t;
    return true;
}

} // namespace stabsim::linalg
