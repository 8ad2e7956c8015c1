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

#ifndef QWALK_SPECTRAL_H
#define QWALK_SPECTRAL_H

#include <string>
#include <vector>

#include "qwalk/graphs.h"

namespace qwalk {

struct EigenCluster {
    cplx eigenvalue;  // mean of the members
    int multiplicity = 0;
    Mat basis;  // D x multiplicity, orthonormal columns
};

/// Diagonalizes a unitary (complex Schur form is diagonal for normal matrices) and groups eigenvalues
/// closer than tol, chaining through union-find. Clusters are ordered by eigenvalue phase in (-pi, pi].
std::vector<EigenCluster> eigenspace_clusters(const Mat &U, double tol = 1e-8);

struct SpectralReport {
    std::vector<EigenCluster> clusters;
    std::vector<int> contribution_dims;  // per cluster, dimension of its final-avoiding subspace
    Mat W;                               // orthonormal basis of range(P_hat)
    Mat P_hat;
    double trace_P = 0.0;
    int trace_P_int = 0;
    std::vector<std::string> warnings;
};

/// Projector onto eigenvectors of U with no amplitude on the final basis indices.
/// Per cluster, the nullspace of (rows of the eigenbasis inside the mask) is found by SVD with
/// relative cutoff `rank_cutoff`; singular values within 10x of the cutoff attach a warning.
SpectralReport infinite_hitting_projector(const Mat &U, const BasisMask &final_mask, double tol = 1e-8,
                                          double rank_cutoff = 1e-9);
SpectralReport infinite_hitting_projector(const std::vector<EigenCluster> &clusters, const BasisMask &final_mask,
                                          double rank_cutoff = 1e-9);

double escape_probability(const SpectralReport &r, const Vec &psi);
double escape_probability(const SpectralReport &r, const Mat &rho);

struct CoinOverlapMatrix {
    int vertex = 0;
    Mat matrix;
    RVec eigenvalues;  // ascending
    Mat eigenvectors;
    /// Eigenvalues below tol.
    int zero_count(double tol = 1e-8) const;
};

CoinOverlapMatrix coin_overlap_matrix(const SpectralReport &r, const BasisIndexing &idx, int v);

enum class DegeneracyVerdict { SufficientForInfinite, Inconclusive };

/// SufficientForInfinite iff some cluster is larger than the coin dimension.
DegeneracyVerdict degeneracy_condition(const std::vector<EigenCluster> &clusters, int coin_dim);

}  // namespace qwalk

#endif
