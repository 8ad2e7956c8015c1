// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWALK_TYPES_H
#define QWALK_TYPES_H

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwalk {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Diagonal 0/1 mask over flat basis indices. mask[i] != 0 means index i is inside the projector.
using BasisMask = std::vector<char>;

/// Raised when a computation cannot decide its answer within its step or size budget.
struct IndeterminateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest absolute entry of m. Zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

/// max |M^dagger M - I|.
double unitarity_defect(const Mat &m);

/// Dense 0/1 diagonal matrix for a basis mask.
Mat mask_matrix(const BasisMask &mask);

}  // namespace qwalk

#endif
