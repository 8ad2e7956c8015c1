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

#include "qwalk/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qwalk {

namespace {

Mat orthonormalize(const Mat &A) {
    if (A.cols() == 0) {
        return A;
    }
    Eigen::HouseholderQR<Mat> qr(A);
    return qr.householderQ() * Mat::Identity(A.rows(), A.cols());
}

}  // namespace

std::vector<EigenCluster> eigenspace_clusters(const Mat &U, double tol) {
    if (U.rows() != U.cols()) {
        throw std::invalid_argument("operator must be square");
    }
    int D = (int)U.rows();
    if (D == 0) {
        return {};
    }
    if (unitarity_defect(U) > 1e-8) {
        throw std::invalid_argument("eigenspace clustering expects a unitary operator");
    }
    Eigen::ComplexSchur<Mat> schur(U);
    if (schur.info() != Eigen::Success) {
        throw std::runtime_error("Schur decomposition failed");
    }
    const Mat &T = schur.matrixT();
    const Mat &Z = schur.matrixU();
    std::vector<cplx> lam(D);
    for (int i = 0; i < D; i++) {
        lam[i] = T(i, i);
    }

    std::vector<int> parent(D);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < D; i++) {
        for (int j = i + 1; j < D; j++) {
            if (std::abs(lam[i] - lam[j]) <= tol) {
                parent[find(j)] = find(i);
            }
        }
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(D, -1);
    for (int i = 0; i < D; i++) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = (int)groups.size();
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }

    std::vector<EigenCluster> out;
    for (const auto &grp : groups) {
        EigenCluster c;
        c.multiplicity = (int)grp.size();
        cplx sum = 0;
        Mat B(D, grp.size());
        for (size_t k = 0; k < grp.size(); k++) {
            sum += lam[grp[k]];
            B.col(k) = Z.col(grp[k]);
        }
        c.eigenvalue = sum / (double)grp.size();
        c.basis = orthonormalize(B);
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const EigenCluster &a, const EigenCluster &b) {
        return std::arg(a.eigenvalue) < std::arg(b.eigenvalue);
    });
    return out;
}

SpectralReport infinite_hitting_projector(const std::vector<EigenCluster> &clusters, const BasisMask &final_mask,
                                          double rank_cutoff) {
    SpectralReport rep;
    rep.clusters = clusters;
    int D = (int)final_mask.size();
    std::vector<int> rows;
    for (int i = 0; i < D; i++) {
        if (final_mask[i]) {
            rows.push_back(i);
        }
    }
    std::vector<Mat> parts;
    int total = 0;
    for (const auto &c : clusters) {
        if (c.basis.rows() != D) {
            throw std::invalid_argument("final mask size does not match the operator");
        }
        int k = (int)c.basis.cols();
        Mat keep;
        if (rows.empty()) {
            keep = c.basis;
        } else {
            Mat Vm(rows.size(), k);
            for (size_t r = 0; r < rows.size(); r++) {
                Vm.row(r) = c.basis.row(rows[r]);
            }
            Eigen::JacobiSVD<Mat> svd(Vm, Eigen::ComputeFullV);
            const RVec &s = svd.singularValues();
            int rank = 0;
            for (int i = 0; i < s.size(); i++) {
                if (s(i) > rank_cutoff) {
                    rank++;
                    if (s(i) <= 10 * rank_cutoff) {
                        rep.warnings.push_back("ambiguous rank near eigenvalue (" + std::to_string(c.eigenvalue.real()) +
                                               ", " + std::to_string(c.eigenvalue.imag()) + ")");
                    }
                }
            }
            keep = c.basis * svd.matrixV().rightCols(k - rank);
        }
        rep.contribution_dims.push_back((int)keep.cols());
        total += (int)keep.cols();
        parts.push_back(std::move(keep));
    }
    Mat W(D, total);
    int at = 0;
    for (const auto &p : parts) {
        W.middleCols(at, p.cols()) = p;
        at += (int)p.cols();
    }
    rep.W = orthonormalize(W);
    rep.P_hat = rep.W * rep.W.adjoint();
    rep.trace_P = rep.P_hat.trace().real();
    rep.trace_P_int = (int)std::lround(rep.trace_P);
    return rep;
}

SpectralReport infinite_hitting_projector(const Mat &U, const BasisMask &final_mask, double tol, double rank_cutoff) {
    if ((int)final_mask.size() != U.rows()) {
        throw std::invalid_argument("final mask size does not match the operator");
    }
    return infinite_hitting_projector(eigenspace_clusters(U, tol), final_mask, rank_cutoff);
}

double escape_probability(const SpectralReport &r, const Vec &psi) {
    if (r.W.cols() == 0) {
        return 0.0;
    }
    return std::clamp((r.W.adjoint() * psi).squaredNorm(), 0.0, 1.0);
}

double escape_probability(const SpectralReport &r, const Mat &rho) {
    if (r.W.cols() == 0) {
        return 0.0;
    }
    return std::clamp((r.W.adjoint() * rho * r.W).trace().real(), 0.0, 1.0);
}

int CoinOverlapMatrix::zero_count(double tol) const {
    int n = 0;
    for (int i = 0; i < eigenvalues.size(); i++) {
        if (eigenvalues(i) < tol) {
            n++;
        }
    }
    return n;
}

CoinOverlapMatrix coin_overlap_matrix(const SpectralReport &r, const BasisIndexing &idx, int v) {
    if (v < 0 || v + 1 >= (int)idx.offsets.size()) {
        throw std::invalid_argument("vertex out of range");
    }
    int off = idx.offsets[v];
    int d = idx.offsets[v + 1] - off;
    CoinOverlapMatrix c;
    c.vertex = v;
    c.matrix = r.P_hat.block(off, off, d, d);
    Mat herm = (c.matrix + c.matrix.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    c.eigenvalues = es.eigenvalues();
    c.eigenvectors = es.eigenvectors();
    return c;
}

DegeneracyVerdict degeneracy_condition(const std::vector<EigenCluster> &clusters, int coin_dim) {
    for (const auto &c : clusters) {
        if (c.multiplicity > coin_dim) {
            return DegeneracyVerdict::SufficientForInfinite;
        }
    }
    return DegeneracyVerdict::Inconclusive;
}

}  // namespace qwalk
