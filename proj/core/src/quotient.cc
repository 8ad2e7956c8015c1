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

#include "qwalk/quotient.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/SVD>

namespace qwalk {

std::vector<int> OrbitBasis::orbit_of() const {
    std::vector<int> out(B.rows(), -1);
    for (int j = 0; j < (int)orbits.size(); j++) {
        for (int x : orbits[j]) {
            out[x] = j;
        }
    }
    return out;
}

OrbitBasis orbit_basis(const std::vector<Permutation> &gens, int D) {
    OrbitBasis ob;
    ob.generators = gens;
    ob.orbits = orbits(gens, D);
    ob.B = Mat::Zero(D, ob.orbits.size());
    for (int j = 0; j < (int)ob.orbits.size(); j++) {
        double w = 1.0 / std::sqrt((double)ob.orbits[j].size());
        for (int x : ob.orbits[j]) {
            ob.B(x, j) = w;
        }
    }
    return ob;
}

OrbitBasis orbit_basis(const PermGroup &grp) {
    return orbit_basis(grp.generators, grp.degree);
}

SymmetryCheck check_walk_symmetry(const Mat &U, const std::vector<Permutation> &gens, double tol) {
    SymmetryCheck sc;
    int D = (int)U.rows();
    for (const auto &p : gens) {
        if ((int)p.size() != D) {
            throw std::invalid_argument("generator dimension does not match the walk");
        }
        // P^dagger U P = U  <=>  U(p[i], p[j]) = U(i, j).
        for (int j = 0; j < D; j++) {
            for (int i = 0; i < D; i++) {
                sc.residual = std::max(sc.residual, std::abs(U(p[i], p[j]) - U(i, j)));
            }
        }
    }
    sc.ok = sc.residual <= tol;
    return sc;
}

Mat quotient_walk(const Mat &U, const OrbitBasis &basis, double tol) {
    SymmetryCheck sc = check_walk_symmetry(U, basis.generators, tol);
    if (!sc.ok) {
        throw std::invalid_argument("walk does not commute with the subgroup (residual " + std::to_string(sc.residual) +
                                    ")");
    }
    Mat UH = basis.B.adjoint() * U * basis.B;
    if (unitarity_defect(UH) > 1e-9) {
        throw std::runtime_error("reduced walk is not unitary");
    }
    return UH;
}

QuotientShift quotient_shift_and_graph(const Mat &S, const OrbitBasis &basis, const BasisIndexing &idx) {
    int m = basis.dim();
    QuotientShift out;
    out.S_H = basis.B.adjoint() * S * basis.B;
    QuotientGraph &qg = out.graph;
    qg.partner.assign(m, -1);
    for (int j = 0; j < m; j++) {
        for (int i = 0; i < m; i++) {
            double re = out.S_H(i, j).real(), im = out.S_H(i, j).imag();
            bool one = std::abs(re - 1.0) <= 1e-12 && std::abs(im) <= 1e-12;
            bool zero = std::abs(re) <= 1e-12 && std::abs(im) <= 1e-12;
            if (!one && !zero) {
                throw std::invalid_argument("quotient shift has an entry outside {0, 1}; connected orbits differ in size");
            }
            if (one) {
                if (qg.partner[j] >= 0) {
                    throw std::invalid_argument("quotient shift is not a permutation");
                }
                qg.partner[j] = i;
            }
        }
        if (qg.partner[j] < 0) {
            throw std::invalid_argument("quotient shift is not a permutation");
        }
    }
    out.S_H = out.S_H.real().cwiseAbs().unaryExpr([](double x) { return std::round(x); }).cast<cplx>();

    std::map<std::vector<int>, int> where;
    qg.vertex_of_orbit.assign(m, -1);
    for (int j = 0; j < m; j++) {
        std::set<int> vs;
        for (int x : basis.orbits[j]) {
            vs.insert(idx.vertex_of(x));
        }
        std::vector<int> key(vs.begin(), vs.end());
        auto it = where.find(key);
        int q;
        if (it == where.end()) {
            q = (int)qg.vertex_sets.size();
            where[key] = q;
            qg.vertex_sets.push_back(key);
            qg.slots.emplace_back();
        } else {
            q = it->second;
        }
        qg.vertex_of_orbit[j] = q;
        qg.slots[q].push_back(j);
    }
    qg.self_loop.assign(m, 0);
    qg.graph = ColoredGraph((int)qg.vertex_sets.size());
    auto color_of = [&](int j) {
        const auto &s = qg.slots[qg.vertex_of_orbit[j]];
        return (int)(std::find(s.begin(), s.end(), j) - s.begin()) + 1;
    };
    for (int j = 0; j < m; j++) {
        int k = qg.partner[j];
        if (qg.vertex_of_orbit[k] == qg.vertex_of_orbit[j]) {
            qg.self_loop[j] = 1;
        }
        if (j <= k) {
            qg.graph.add_edge(qg.vertex_of_orbit[j], color_of(j), qg.vertex_of_orbit[k], color_of(k));
        }
    }
    return out;
}

QuotientCoin quotient_coin(const Mat &U_H, const Mat &S_H, const QuotientGraph &qg, double tol) {
    int m = (int)S_H.rows();
    if (U_H.rows() != m || U_H.cols() != m) {
        throw std::invalid_argument("U_H and S_H dimensions differ");
    }
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            double a = std::abs(S_H(i, j));
            if (a > 1e-12 && std::abs(a - 1.0) > 1e-12) {
                throw std::invalid_argument("S_H is not a permutation matrix");
            }
        }
    }
    QuotientCoin qc;
    qc.C_H = S_H.adjoint() * U_H;
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            if (qg.vertex_of_orbit[i] != qg.vertex_of_orbit[j] && std::abs(qc.C_H(i, j)) > tol) {
                throw std::invalid_argument("reduced coin mixes different quotient vertices");
            }
        }
    }
    for (const auto &slots : qg.slots) {
        int k = (int)slots.size();
        Mat blk(k, k);
        for (int a = 0; a < k; a++) {
            for (int b = 0; b < k; b++) {
                blk(a, b) = qc.C_H(slots[a], slots[b]);
            }
        }
        if (unitarity_defect(blk) > tol) {
            throw std::runtime_error("reduced coin block is not unitary");
        }
        qc.blocks.push_back(std::move(blk));
    }
    return qc;
}

int line_index_R(int x) {
    return 2 * x;
}

int line_index_L(int x) {
    return 2 * x - 1;
}

LineWalk hypercube_line_reduction(int n) {
    if (n < 1) {
        throw std::invalid_argument("line reduction needs n >= 1");
    }
    int D = 2 * n;
    LineWalk lw;
    lw.S = Mat::Zero(D, D);
    for (int x = 0; x < n; x++) {
        lw.S(line_index_R(x), line_index_L(x + 1)) = 1.0;
        lw.S(line_index_L(x + 1), line_index_R(x)) = 1.0;
    }
    lw.C = Mat::Zero(D, D);
    lw.C(line_index_R(0), line_index_R(0)) = 1.0;
    lw.C(line_index_L(n), line_index_L(n)) = 1.0;
    for (int x = 1; x < n; x++) {
        double cw = 1.0 - 2.0 * x / n;
        double sw = 2.0 * std::sqrt((double)x * (n - x)) / n;
        int L = line_index_L(x), R = line_index_R(x);
        lw.C(L, L) = -cw;
        lw.C(R, L) = sw;
        lw.C(L, R) = sw;
        lw.C(R, R) = cw;
    }
    lw.U = lw.S * lw.C;
    return lw;
}

RMat glued_trees_quotient_hamiltonian(int n, double gamma) {
    if (n < 1) {
        throw std::invalid_argument("glued trees depth must be >= 1");
    }
    int m = 2 * n + 1;
    RMat H = RMat::Zero(m, m);
    for (int j = 0; j < m; j++) {
        H(j, j) = (j == 0 || j == n || j == 2 * n) ? 2 * gamma : 3 * gamma;
        if (j + 1 < m) {
            H(j, j + 1) = H(j + 1, j) = -std::sqrt(2.0) * gamma;
        }
    }
    return H;
}

RMat glued_trees_column_isometry(int depth) {
    std::vector<int> col = glued_trees_columns(depth);
    RMat B = RMat::Zero(col.size(), 2 * depth + 1);
    for (size_t v = 0; v < col.size(); v++) {
        int j = col[v];
        B(v, j) = std::pow(2.0, -std::min(j, 2 * depth - j) / 2.0);
    }
    return B;
}

BasisMask quotient_mask(const OrbitBasis &basis, const BasisMask &final_mask) {
    if ((int)final_mask.size() != basis.B.rows()) {
        throw std::invalid_argument("final mask size does not match the basis");
    }
    BasisMask qm(basis.dim(), 0);
    for (int j = 0; j < basis.dim(); j++) {
        int inside = 0;
        for (int x : basis.orbits[j]) {
            inside += final_mask[x] ? 1 : 0;
        }
        if (inside != 0 && inside != (int)basis.orbits[j].size()) {
            throw std::invalid_argument("final projector splits an orbit; it does not commute with the subgroup");
        }
        qm[j] = inside ? 1 : 0;
    }
    return qm;
}

QuotientHittingVerdict quotient_infinite_hitting(const Mat &U, const OrbitBasis &basis, const BasisMask &final_mask,
                                                 double tol) {
    for (const auto &g : basis.generators) {
        for (size_t i = 0; i < g.size(); i++) {
            if ((final_mask[i] != 0) != (final_mask[g[i]] != 0)) {
                throw std::invalid_argument("final projector does not commute with the subgroup");
            }
        }
    }
    QuotientHittingVerdict v;
    v.quotient_mask = quotient_mask(basis, final_mask);

    SpectralReport full = infinite_hitting_projector(U, final_mask, tol);
    v.trace_P_full = full.trace_P_int;
    if (full.W.cols() > 0) {
        Eigen::JacobiSVD<Mat> svd(full.W.adjoint() * basis.B);
        const RVec &s = svd.singularValues();
        for (int i = 0; i < s.size(); i++) {
            if (s(i) > 1.0 - 1e-8) {
                v.intersection_dim++;
            }
        }
    }

    Mat UH = quotient_walk(U, basis);
    SpectralReport red = infinite_hitting_projector(UH, v.quotient_mask, tol);
    v.intersection_dim_quotient = red.trace_P_int;
    v.paths_agree = v.intersection_dim == v.intersection_dim_quotient;
    return v;
}

bool quotient_automorphism_check(const Permutation &g, const OrbitBasis &basis, const Mat &S_H) {
    std::vector<int> of = basis.orbit_of();
    if (g.size() != of.size() || !is_permutation(g)) {
        throw std::invalid_argument("permutation dimension does not match the basis");
    }
    int m = basis.dim();
    std::vector<int> induced(m, -1);
    for (int j = 0; j < m; j++) {
        int target = of[g[basis.orbits[j][0]]];
        for (int x : basis.orbits[j]) {
            if (of[g[x]] != target) {
                throw std::invalid_argument("permutation does not map orbits onto orbits");
            }
        }
        if (basis.orbits[target].size() != basis.orbits[j].size()) {
            throw std::invalid_argument("permutation does not map orbits onto orbits");
        }
        induced[j] = target;
    }
    if (!is_permutation(induced)) {
        throw std::invalid_argument("permutation does not map orbits onto orbits");
    }
    for (int a = 0; a < m; a++) {
        for (int b = 0; b < m; b++) {
            if (std::abs(S_H(induced[a], induced[b]) - S_H(a, b)) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qwalk
