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

#ifndef QWALK_QUOTIENT_H
#define QWALK_QUOTIENT_H

#include <vector>

#include "qwalk/groups.h"
#include "qwalk/spectral.h"

namespace qwalk {

/// Orbits of basis indices and the isometry onto the symmetric subspace.
struct OrbitBasis {
    std::vector<std::vector<int>> orbits;  // sorted by smallest member
    Mat B;                                 // D x m, column j = uniform superposition of orbit j
    std::vector<Permutation> generators;
    int dim() const {
        return (int)orbits.size();
    }
    /// Orbit containing each basis index.
    std::vector<int> orbit_of() const;
};

OrbitBasis orbit_basis(const std::vector<Permutation> &gens, int D);
OrbitBasis orbit_basis(const PermGroup &grp);

struct SymmetryCheck {
    bool ok = false;
    double residual = 0.0;  // max over generators of max |U P - P U|
};

SymmetryCheck check_walk_symmetry(const Mat &U, const std::vector<Permutation> &gens, double tol = 1e-10);

/// B^dagger U B. Throws std::invalid_argument when U does not commute with the generators.
Mat quotient_walk(const Mat &U, const OrbitBasis &basis, double tol = 1e-10);

struct QuotientGraph {
    std::vector<std::vector<int>> vertex_sets;  // sorted vertex ids per quotient vertex
    std::vector<std::vector<int>> slots;        // orbit ids at each quotient vertex, in orbit order
    std::vector<int> vertex_of_orbit;
    std::vector<int> partner;  // orbit reached through S_H
    std::vector<char> self_loop;
    /// Slot k of quotient vertex q has color k+1. Self loops appear as (q, c, q, c') edges.
    ColoredGraph graph;
};

struct QuotientShift {
    Mat S_H;
    QuotientGraph graph;
};

/// S_H = B^dagger S B plus the orbit-level graph. Throws when S_H is not a 0/1 permutation, which
/// happens only if connected orbits differ in size.
QuotientShift quotient_shift_and_graph(const Mat &S, const OrbitBasis &basis, const BasisIndexing &idx);

struct QuotientCoin {
    Mat C_H;                  // S_H^dagger U_H
    std::vector<Mat> blocks;  // per quotient vertex, rows/cols in slot order
};

QuotientCoin quotient_coin(const Mat &U_H, const Mat &S_H, const QuotientGraph &qg, double tol = 1e-9);

struct LineWalk {
    Mat S;
    Mat C;
    Mat U;
};

/// Hamming-weight line of the n-cube with the Grover coin on 2n states R0, L1, R1, ..., R(n-1), Ln.
/// |R,x> sits at index 2x and |L,x> at 2x-1.
LineWalk hypercube_line_reduction(int n);
int line_index_R(int x);
int line_index_L(int x);

/// Tridiagonal (2n+1) x (2n+1) column Hamiltonian of the glued trees.
RMat glued_trees_quotient_hamiltonian(int n, double gamma);
/// N x (2n+1) isometry: column j is the normalized uniform state over column j.
RMat glued_trees_column_isometry(int depth);

struct QuotientHittingVerdict {
    int trace_P_full = 0;           // rank of P_hat on the full space
    int intersection_dim = 0;       // dim(range P_hat  cap  range B), full-space route
    int intersection_dim_quotient = 0;  // rank of the quotient projector built from U_H
    bool paths_agree = false;
    BasisMask quotient_mask;
};

/// Decides infinite hitting inside the symmetric subspace two independent ways.
/// Throws std::invalid_argument if the final projector does not commute with the group.
QuotientHittingVerdict quotient_infinite_hitting(const Mat &U, const OrbitBasis &basis, const BasisMask &final_mask,
                                                 double tol = 1e-8);

/// Final mask carried to the orbit basis. Throws if an orbit is split by the mask.
BasisMask quotient_mask(const OrbitBasis &basis, const BasisMask &final_mask);

/// g must map orbits onto orbits. Returns whether the induced orbit permutation preserves S_H.
bool quotient_automorphism_check(const Permutation &g, const OrbitBasis &basis, const Mat &S_H);

}  // namespace qwalk

#endif
