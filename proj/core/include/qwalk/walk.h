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

#ifndef QWALK_WALK_H
#define QWALK_WALK_H

#include "qwalk/graphs.h"

namespace qwalk {

struct Coin {
    enum class Kind { Grover, DFT, Custom };
    Kind kind = Kind::Custom;
    Mat matrix;
    int dim() const {
        return (int)matrix.rows();
    }
};

/// 2|psi><psi| - I with |psi> the uniform direction state.
Coin grover_coin(int d);
/// Entries w^{jk}/sqrt(d), w = exp(2 pi i/d). Row j belongs to color j+1.
Coin dft_coin(int d);
/// Throws std::invalid_argument if the matrix is not square and unitary within tol.
Coin custom_coin(const Mat &m, double tol = 1e-10);

struct WalkOperator {
    Mat matrix;
    int coin_dim = 0;  // 0 for continuous-time propagators
    int dim() const {
        return (int)matrix.rows();
    }
};

/// U = S (I_N tensor C) on a consistently colored d-regular graph.
WalkOperator evolution_operator(const ColoredGraph &g, const Coin &c, double tol = 1e-10);

enum class HamiltonianConvention {
    Default,    // Adjacency for regular graphs, Laplacian otherwise
    Laplacian,  // -gamma on edges, deg(v) gamma on the diagonal
    Adjacency,  // -gamma on edges, zero diagonal
};

RMat continuous_hamiltonian(const ColoredGraph &g, double gamma,
                            HamiltonianConvention conv = HamiltonianConvention::Default);

/// exp(i H t) via the symmetric eigendecomposition of H.
WalkOperator continuous_propagator(const RMat &H, double t, double tol = 1e-9);

}  // namespace qwalk

#endif
