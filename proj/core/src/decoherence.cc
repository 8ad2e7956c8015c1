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

#include "qwalk/decoherence.h"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace qwalk {

namespace {

Mat kron_conj(const Mat &A) {
    int n = (int)A.rows();
    Mat K(n * n, n * n);
    Mat Ac = A.conjugate();
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            K.block(i * n, j * n, n, n) = A(i, j) * Ac;
        }
    }
    return K;
}

// Rows of the D^2 superoperator selected by mask x mask (the action of P x P* or Q x Q* from the left).
Mat keep_pair_rows(const Mat &S, const BasisMask &mask, bool inside) {
    int D = (int)mask.size();
    Mat out = S;
    for (int i = 0; i < D; i++) {
        for (int j = 0; j < D; j++) {
            bool keep = inside ? (mask[i] && mask[j]) : (!mask[i] && !mask[j]);
            if (!keep) {
                out.row(i * D + j).setZero();
            }
        }
    }
    return out;
}

struct DecoheredParts {
    Mat N;
    Mat Y;
};

DecoheredParts decohered_parts(const MeasuredWalkSpec &spec, const Mat &superop) {
    Mat DU = superop * kron_conj(spec.U);
    return {keep_pair_rows(DU, spec.final_mask, false), keep_pair_rows(DU, spec.final_mask, true)};
}

void check_orthonormal(const Mat &basis) {
    if (basis.cols() == 0) {
        throw std::invalid_argument("subspace basis is empty");
    }
    if (max_abs(basis.adjoint() * basis - Mat::Identity(basis.cols(), basis.cols())) > 1e-9) {
        throw std::invalid_argument("subspace basis is not orthonormal");
    }
}

DfsVerdict dfs_check(const std::vector<Mat> &ops, const Mat &basis, double tol) {
    check_orthonormal(basis);
    DfsVerdict v;
    v.is_dfs = true;
    for (int i = 0; i < (int)ops.size(); i++) {
        if (ops[i].rows() != basis.rows() || ops[i].cols() != basis.rows()) {
            throw std::invalid_argument("operator and subspace dimensions differ");
        }
        Mat img = ops[i] * basis;
        cplx c = basis.col(0).dot(img.col(0));
        for (int k = 0; k < basis.cols(); k++) {
            double res = (img.col(k) - c * basis.col(k)).norm();
            if (res > tol) {
                DfsVerdict bad;
                bad.is_dfs = false;
                bad.witness_op = i;
                bad.witness_vector = k;
                bad.residual = res;
                return bad;
            }
            v.residual = std::max(v.residual, res);
        }
        v.coefficients.push_back(c);
    }
    return v;
}

}  // namespace

double Channel::completeness_defect() const {
    if (kraus.empty()) {
        return INFINITY;
    }
    int D = dim();
    Mat sum = Mat::Zero(D, D);
    for (const auto &A : kraus) {
        if (A.rows() != D || A.cols() != D) {
            return INFINITY;
        }
        sum += A.adjoint() * A;
    }
    return max_abs(sum - Mat::Identity(D, D));
}

void Channel::validate(double tol) const {
    double d = completeness_defect();
    if (!(d <= tol)) {
        throw std::invalid_argument("Kraus operators violate completeness (defect " + std::to_string(d) + ")");
    }
}

bool Channel::is_identity() const {
    if (kraus.size() != 1) {
        return false;
    }
    const Mat &A = kraus[0];
    cplx c = A(0, 0);
    return std::abs(std::abs(c) - 1.0) < 1e-15 && max_abs(A - c * Mat::Identity(A.rows(), A.cols())) == 0.0;
}

const char *to_string(DephasingKind k) {
    switch (k) {
        case DephasingKind::Both:
            return "both";
        case DephasingKind::CoinOnly:
            return "coin";
        case DephasingKind::PositionOnly:
            return "position";
    }
    return "?";
}

DephasingKind parse_dephasing_kind(const std::string &s) {
    if (s == "both") {
        return DephasingKind::Both;
    }
    if (s == "coin") {
        return DephasingKind::CoinOnly;
    }
    if (s == "position") {
        return DephasingKind::PositionOnly;
    }
    throw std::invalid_argument("unknown dephasing kind '" + s + "' (expected both, coin or position)");
}

std::vector<Mat> dephasing_projectors(DephasingKind kind, int num_vertices, int coin_dim) {
    if (num_vertices < 1 || coin_dim < 1) {
        throw std::invalid_argument("dephasing needs positive dimensions");
    }
    int D = num_vertices * coin_dim;
    std::vector<Mat> out;
    switch (kind) {
        case DephasingKind::Both:
            for (int i = 0; i < D; i++) {
                Mat P = Mat::Zero(D, D);
                P(i, i) = 1.0;
                out.push_back(std::move(P));
            }
            break;
        case DephasingKind::CoinOnly:
            for (int c = 0; c < coin_dim; c++) {
                Mat P = Mat::Zero(D, D);
                for (int v = 0; v < num_vertices; v++) {
                    P(v * coin_dim + c, v * coin_dim + c) = 1.0;
                }
                out.push_back(std::move(P));
            }
            break;
        case DephasingKind::PositionOnly:
            for (int v = 0; v < num_vertices; v++) {
                Mat P = Mat::Zero(D, D);
                for (int c = 0; c < coin_dim; c++) {
                    P(v * coin_dim + c, v * coin_dim + c) = 1.0;
                }
                out.push_back(std::move(P));
            }
            break;
    }
    return out;
}

Channel dephasing_channel(DephasingKind kind, double p, int num_vertices, int coin_dim) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("dephasing strength must lie in [0, 1]");
    }
    int D = num_vertices * coin_dim;
    Channel ch;
    ch.label = std::string(to_string(kind)) + " dephasing p=" + std::to_string(p);
    if (p < 1.0) {
        ch.kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(D, D));
    }
    if (p > 0.0) {
        for (auto &P : dephasing_projectors(kind, num_vertices, coin_dim)) {
            ch.kraus.push_back(std::sqrt(p) * P);
        }
    }
    ch.validate();
    return ch;
}

Mat apply_channel(const Channel &ch, const Mat &rho) {
    if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
        throw std::invalid_argument("density matrix dimension does not match the channel");
    }
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const auto &A : ch.kraus) {
        out += A * rho * A.adjoint();
    }
    return out;
}

Mat channel_superoperator(const Channel &ch) {
    int D = ch.dim();
    Mat S = Mat::Zero(D * D, D * D);
    for (const auto &A : ch.kraus) {
        S += kron_conj(A);
    }
    return S;
}

HittingResult decohered_hitting_time_series(const MeasuredWalkSpec &spec, const Channel &ch, double epsilon,
                                            const SeriesOptions &opt) {
    spec.validate();
    ch.validate();
    if (ch.dim() != spec.dim()) {
        throw std::invalid_argument("channel dimension does not match the walk");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    const BasisMask &m = spec.final_mask;
    int D = spec.dim();
    int64_t window = opt.stall_window > 0 ? opt.stall_window : 4 * (int64_t)D;
    std::vector<double> hist(window + 1, 0.0);
    Mat rho = spec.rho0;
    double mass = 0.0, tsum = 0.0;
    for (int64_t t = 1; t <= opt.step_cap; t++) {
        rho = apply_channel(ch, spec.U * rho * spec.U.adjoint());
        double p = 0.0;
        for (int i = 0; i < D; i++) {
            if (m[i]) {
                p += rho(i, i).real();
            }
        }
        for (int i = 0; i < D; i++) {
            if (m[i]) {
                rho.row(i).setZero();
                rho.col(i).setZero();
            }
        }
        p = std::max(p, 0.0);
        mass += p;
        tsum += (double)t * p;
        HittingResult r;
        r.method = HitMethod::Series;
        r.arrival_mass = mass;
        r.truncation = t;
        if (mass >= 1.0 - epsilon) {
            r.kind = HitKind::Finite;
            r.value = tsum;
            r.escape = std::max(0.0, 1.0 - mass);
            return r;
        }
        hist[t % (window + 1)] = mass;
        if (t >= window && mass - hist[(t - window) % (window + 1)] < opt.stall_gain) {
            r.kind = HitKind::Infinite;
            r.value = INFINITY;
            r.escape = std::clamp(1.0 - mass, 0.0, 1.0);
            return r;
        }
    }
    throw IndeterminateError("decohered series reached the step cap");
}

HittingResult decohered_hitting_time(const MeasuredWalkSpec &spec, const Channel &ch, const DecoheredOptions &opt) {
    spec.validate();
    ch.validate();
    if (ch.dim() != spec.dim()) {
        throw std::invalid_argument("channel dimension does not match the walk");
    }
    if (ch.is_identity()) {
        return hitting_time_closed_form(spec);
    }
    int D = spec.dim();
    if (D > opt.max_dim) {
        throw std::invalid_argument("dimension " + std::to_string(D) + " exceeds the decohered closed-form guard " +
                                    std::to_string(opt.max_dim));
    }
    int DD = D * D;
    DecoheredParts parts = decohered_parts(spec, channel_superoperator(ch));
    Mat M = Mat::Identity(DD, DD) - parts.N;
    Vec rv = vectorize(spec.rho0);
    Vec Iv = vectorize(Mat::Identity(D, D));
    Eigen::BDCSVD<Mat> sv(M);
    const RVec &s = sv.singularValues();
    double smax = s(0), smin = s(s.size() - 1);
    HittingResult r;
    if (smin > opt.singular_tol * smax) {
        Eigen::PartialPivLU<Mat> lu(M);
        Vec y = lu.solve(lu.solve(rv));
        r.kind = HitKind::Finite;
        r.method = HitMethod::ClosedForm;
        r.value = Iv.dot(parts.Y * y).real();
        r.arrival_mass = 1.0;
        return r;
    }
    // Persistent mass under the decohered map decides between infinite and pseudo-inverse.
    SeriesOptions so = opt.series;
    HittingResult probe = decohered_hitting_time_series(spec, ch, std::max(opt.escape_tol, 1e-15), so);
    if (probe.kind == HitKind::Infinite && probe.escape > opt.escape_tol) {
        r.kind = HitKind::Infinite;
        r.method = HitMethod::PseudoInverse;
        r.value = INFINITY;
        r.escape = probe.escape;
        r.arrival_mass = probe.arrival_mass;
        return r;
    }
    Eigen::BDCSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RVec sinv = RVec::Zero(s.size());
    for (int i = 0; i < s.size(); i++) {
        if (svd.singularValues()(i) > opt.singular_tol * smax) {
            sinv(i) = 1.0 / svd.singularValues()(i);
        }
    }
    auto pinv_apply = [&](const Vec &x) -> Vec {
        return svd.matrixV() * (sinv.asDiagonal() * (svd.matrixU().adjoint() * x));
    };
    Vec y = pinv_apply(pinv_apply(rv));
    r.kind = HitKind::Finite;
    r.method = HitMethod::PseudoInverse;
    r.value = Iv.dot(parts.Y * y).real();
    r.escape = probe.kind == HitKind::Infinite ? probe.escape : 0.0;
    r.arrival_mass = 1.0 - r.escape;
    return r;
}

double hitting_time_slope(const MeasuredWalkSpec &spec, DephasingKind kind, double p, int num_vertices, int coin_dim,
                          const DecoheredOptions &opt) {
    spec.validate();
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("slope is defined for p in (0, 1]");
    }
    int D = spec.dim();
    if (D != num_vertices * coin_dim) {
        throw std::invalid_argument("graph dimensions do not match the walk");
    }
    if (D > opt.max_dim) {
        throw std::invalid_argument("dimension exceeds the decohered closed-form guard");
    }
    int DD = D * D;
    Channel ch = dephasing_channel(kind, p, num_vertices, coin_dim);
    Mat dD = -Mat::Identity(DD, DD);
    for (const auto &K : dephasing_projectors(kind, num_vertices, coin_dim)) {
        dD += kron_conj(K);
    }
    DecoheredParts at = decohered_parts(spec, channel_superoperator(ch));
    DecoheredParts diff = decohered_parts(spec, dD);
    Mat M = Mat::Identity(DD, DD) - at.N;
    Eigen::BDCSVD<Mat> sv(M);
    const RVec &s = sv.singularValues();
    if (!(s(s.size() - 1) > opt.singular_tol * s(0))) {
        throw std::domain_error("I - N is singular at this p; the slope is undefined");
    }
    Eigen::PartialPivLU<Mat> lu(M);
    Vec rv = vectorize(spec.rho0);
    Vec Iv = vectorize(Mat::Identity(D, D));
    Vec a = lu.solve(rv);
    Vec b = lu.solve(a);
    Vec inner = lu.solve(diff.N * b) + lu.solve(lu.solve(diff.N * a));
    return Iv.dot(diff.Y * b + at.Y * inner).real();
}

DfsVerdict dfs_check_kraus(const Channel &ch, const Mat &basis, double tol) {
    ch.validate();
    return dfs_check(ch.kraus, basis, tol);
}

DfsVerdict dfs_check_lindblad(const LindbladSet &ls, const Mat &basis, double tol) {
    return dfs_check(ls.ops, basis, tol);
}

Mat hypercube_direction_swap(int n, int i) {
    if (n < 2 || i < 1 || i > n - 1) {
        throw std::invalid_argument("swap index must lie in 1..n-1");
    }
    int N = 1 << n;
    int D = N * n;
    Mat S = Mat::Zero(D, D);
    int b0 = i - 1, b1 = i;
    for (int v = 0; v < N; v++) {
        int x0 = v >> b0 & 1, x1 = v >> b1 & 1;
        int w = v;
        if (x0 != x1) {
            w ^= (1 << b0) | (1 << b1);
        }
        for (int c = 0; c < n; c++) {
            int c2 = c == b0 ? b1 : c == b1 ? b0 : c;
            S(w * n + c2, v * n + c) = 1.0;
        }
    }
    return S;
}

Channel swap_dephasing_example(int n, const std::vector<cplx> &kappas) {
    if ((int)kappas.size() != n - 1) {
        throw std::invalid_argument("need n - 1 coefficients");
    }
    double norm2 = 0.0;
    for (cplx k : kappas) {
        norm2 += std::norm(k);
    }
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("swap dephasing coefficients must satisfy sum |kappa|^2 = 1");
    }
    Channel ch;
    ch.label = "swap dephasing n=" + std::to_string(n);
    for (int i = 1; i < n; i++) {
        ch.kraus.push_back(kappas[i - 1] * hypercube_direction_swap(n, i));
    }
    ch.validate();
    return ch;
}

LindbladSet swap_lindblad_example(int n, const std::vector<cplx> &kappas) {
    if ((int)kappas.size() != n - 1) {
        throw std::invalid_argument("need n - 1 coefficients");
    }
    LindbladSet ls;
    for (int i = 1; i < n; i++) {
        ls.ops.push_back(kappas[i - 1] * hypercube_direction_swap(n, i));
        ls.rates.push_back(1.0);
    }
    return ls;
}

}  // namespace qwalk
