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

#ifndef QWALK_DECOHERENCE_H
#define QWALK_DECOHERENCE_H

#include <string>
#include <vector>

#include "qwalk/hitting.h"

namespace qwalk {

/// Kraus form D(rho) = sum A_i rho A_i^dagger.
struct Channel {
    std::vector<Mat> kraus;
    std::string label;
    int dim() const {
        return kraus.empty() ? 0 : (int)kraus[0].rows();
    }
    /// max |sum A^dagger A - I|.
    double completeness_defect() const;
    /// Throws std::invalid_argument if completeness fails beyond tol.
    void validate(double tol = 1e-10) const;
    /// Single Kraus operator proportional to I with unit modulus.
    bool is_identity() const;
};

struct LindbladSet {
    std::vector<Mat> ops;
    std::vector<double> rates;
};

enum class DephasingKind { Both, CoinOnly, PositionOnly };
const char *to_string(DephasingKind k);
DephasingKind parse_dephasing_kind(const std::string &s);

/// {sqrt(1-p) I} plus sqrt(p) times the rank-1 projectors of the chosen factor. p = 0 gives {I}.
Channel dephasing_channel(DephasingKind kind, double p, int num_vertices, int coin_dim);
/// The projectors without the sqrt(p) weight (their sum is I).
std::vector<Mat> dephasing_projectors(DephasingKind kind, int num_vertices, int coin_dim);

Mat apply_channel(const Channel &ch, const Mat &rho);

/// sum A_i x conj(A_i) in the row-stacking convention.
Mat channel_superoperator(const Channel &ch);

struct DecoheredOptions {
    int max_dim = 48;  // the superoperators are D^2 x D^2 dense
    double singular_tol = 1e-9;
    double escape_tol = 1e-9;
    SeriesOptions series;
};

/// Closed form with N_D = (Q x Q*) D (U x U*) and Y_D = (P x P*) D (U x U*).
/// The identity channel is delegated to hitting_time_closed_form.
HittingResult decohered_hitting_time(const MeasuredWalkSpec &spec, const Channel &ch,
                                     const DecoheredOptions &opt = {});

/// Step-iterated measure(decohere(unitary(rho))) series; same stopping rules as hitting_time_series.
HittingResult decohered_hitting_time_series(const MeasuredWalkSpec &spec, const Channel &ch, double epsilon,
                                            const SeriesOptions &opt = {});

/// Analytic d tau/dp for a dephasing family at p in (0, 1].
///
/// With M = I - N: d tau = I^v [dY M^-2 + Y (M^-1 dN M^-2 + M^-2 dN M^-1)] rho^v,
/// dN and dY built from dD/dp = -I + sum K x conj(K) over the dephasing projectors K.
double hitting_time_slope(const MeasuredWalkSpec &spec, DephasingKind kind, double p, int num_vertices,
                          int coin_dim, const DecoheredOptions &opt = {});

struct DfsVerdict {
    bool is_dfs = false;
    std::vector<cplx> coefficients;  // c_i per operator when is_dfs
    int witness_op = -1;
    int witness_vector = -1;
    double residual = 0.0;  // the witness residual, or the worst residual when is_dfs
};

/// Every operator must act as c_i I on span(basis). c_i is read from the first basis vector.
DfsVerdict dfs_check_kraus(const Channel &ch, const Mat &basis, double tol = 1e-9);
DfsVerdict dfs_check_lindblad(const LindbladSet &ls, const Mat &basis, double tol = 1e-9);

/// Operator that swaps vertex bits i-1 and i and exchanges coin directions i and i+1 (i in 1..n-1).
Mat hypercube_direction_swap(int n, int i);
/// Kraus A_i = kappa_i * hypercube_direction_swap(n, i), i = 1..n-1; needs sum |kappa_i|^2 = 1.
Channel swap_dephasing_example(int n, const std::vector<cplx> &kappas);
LindbladSet swap_lindblad_example(int n, const std::vector<cplx> &kappas);

}  // namespace qwalk

#endif
