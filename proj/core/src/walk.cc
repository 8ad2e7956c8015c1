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

#include "qwalk/walk.h"

#include <cmath>
#include <numbers>

namespace qwalk {

double unitarity_defect(const Mat &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols()));
}

Mat mask_matrix(const BasisMask &mask) {
    int n = (int)mask.size();
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; i++) {
        if (mask[i]) {
            m(i, i) = 1.0;
        }
    }
    return m;
}

Coin grover_coin(int d) {
    if (d < 1) {
        throw std::invalid_argument("coin dimension must be positive");
    }
    Coin c;
    c.kind = Coin::Kind::Grover;
    c.matrix = Mat::Constant(d, d, 2.0 / d) - Mat::Identity(d, d);
    return c;
}

Coin dft_coin(int d) {
    if (d < 1) {
        throw std::invalid_argument("coin dimension must be positive");
    }
    Coin c;
    c.kind = Coin::Kind::DFT;
    c.matrix.resize(d, d);
    double s = 1.0 / std::sqrt((double)d);
    for (int j = 0; j < d; j++) {
        for (int k = 0; k < d; k++) {
            // Reduce jk mod d first so large exponents keep full precision.
            double phase = 2 * std::numbers::pi * (double)((j * k) % d) / d;
            c.matrix(j, k) = s * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return c;
}

Coin custom_coin(const Mat &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("coin must be a non-empty square matrix");
    }
    double defect = unitarity_defect(m);
    if (!(defect <= tol)) {
        throw std::invalid_argument("coin is not unitary (defect " + std::to_string(defect) + ")");
    }
    Coin c;
    c.kind = Coin::Kind::Custom;
    c.matrix = m;
    return c;
}

WalkOperator evolution_operator(const ColoredGraph &g, const Coin &c, double tol) {
    if (!g.consistently_colored()) {
        throw std::invalid_argument("evolution operator needs a consistently colored regular graph");
    }
    int d = *g.regular_degree();
    if (d != c.dim()) {
        throw std::invalid_argument("coin dimension " + std::to_string(c.dim()) + " does not match degree " +
                                    std::to_string(d));
    }
    std::vector<int> s = shift_permutation(g);
    int N = g.num_vertices();
    WalkOperator w;
    w.coin_dim = d;
    w.matrix = Mat::Zero(N * d, N * d);
    // Row s[v d + a] of U is row (v d + a) of I tensor C.
    for (int v = 0; v < N; v++) {
        for (int a = 0; a < d; a++) {
            w.matrix.row(s[v * d + a]).segment(v * d, d) = c.matrix.row(a);
        }
    }
    double defect = unitarity_defect(w.matrix);
    if (!(defect <= tol)) {
        throw std::runtime_error("evolution operator failed the unitarity check");
    }
    return w;
}

RMat continuous_hamiltonian(const ColoredGraph &g, double gamma, HamiltonianConvention conv) {
    if (conv == HamiltonianConvention::Default) {
        conv = g.regular_degree() ? HamiltonianConvention::Adjacency : HamiltonianConvention::Laplacian;
    }
    RMat A = adjacency_matrix(g);
    RMat H = -gamma * A;
    if (conv == HamiltonianConvention::Laplacian) {
        for (int v = 0; v < g.num_vertices(); v++) {
            H(v, v) = gamma * A.row(v).sum();
        }
    }
    return H;
}

WalkOperator continuous_propagator(const RMat &H, double t, double tol) {
    if (H.rows() != H.cols()) {
        throw std::invalid_argument("Hamiltonian must be square");
    }
    double scale = std::max(1.0, max_abs(H));
    if (max_abs(H - H.transpose()) > 1e-12 * scale) {
        throw std::invalid_argument("Hamiltonian must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(H);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("Hamiltonian diagonalization failed");
    }
    const RMat &V = es.eigenvectors();
    Vec phases(H.rows());
    for (int k = 0; k < H.rows(); k++) {
        double a = es.eigenvalues()(k) * t;
        phases(k) = cplx(std::cos(a), std::sin(a));
    }
    WalkOperator w;
    w.coin_dim = 0;
    Mat Vc = V.cast<cplx>();
    w.matrix = Vc * phases.asDiagonal() * Vc.transpose();
    double defect = unitarity_defect(w.matrix);
    if (!(defect <= tol)) {
        throw std::runtime_error("propagator failed the unitarity check");
    }
    return w;
}

}  // namespace qwalk
