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

#include "qwalk/hitting.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qwalk/spectral.h"

namespace qwalk {

namespace {

void check_mask(const BasisMask &mask, int D) {
    if ((int)mask.size() != D) {
        throw std::invalid_argument("final mask size does not match the walk dimension");
    }
}

// Q U: rows of U inside the final mask zeroed.
Mat not_found_step(const Mat &U, const BasisMask &mask) {
    Mat A = U;
    for (int i = 0; i < (int)mask.size(); i++) {
        if (mask[i]) {
            A.row(i).setZero();
        }
    }
    return A;
}

// P U: rows of U outside the final mask zeroed.
Mat found_step(const Mat &U, const BasisMask &mask) {
    Mat B = U;
    for (int i = 0; i < (int)mask.size(); i++) {
        if (!mask[i]) {
            B.row(i).setZero();
        }
    }
    return B;
}

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

// One measured step of the walker state. Returns the probability detected at this step.
struct SeriesState {
    const MeasuredWalkSpec &spec;
    Vec psi;
    Mat rho;
    bool pure;

    explicit SeriesState(const MeasuredWalkSpec &s) : spec(s), pure(s.psi0.has_value()) {
        if (pure) {
            psi = *s.psi0;
        } else {
            rho = s.rho0;
        }
    }

    double step() {
        const BasisMask &m = spec.final_mask;
        double p = 0.0;
        if (pure) {
            psi = spec.U * psi;
            for (int i = 0; i < psi.size(); i++) {
                if (m[i]) {
                    p += std::norm(psi(i));
                    psi(i) = 0.0;
                }
            }
        } else {
            rho = spec.U * rho * spec.U.adjoint();
            for (int i = 0; i < rho.rows(); i++) {
                if (m[i]) {
                    p += rho(i, i).real();
                }
            }
            for (int i = 0; i < rho.rows(); i++) {
                if (m[i]) {
                    rho.row(i).setZero();
                    rho.col(i).setZero();
                }
            }
        }
        return std::max(p, 0.0);
    }
};

// Ring buffer test for "mass gained less than `gain` over the last `window` steps".
class StallDetector {
   public:
    StallDetector(int64_t window, double gain) : window_(window), gain_(gain), hist_(window + 1, 0.0) {
    }
    bool push(int64_t t, double mass) {
        hist_[t % (window_ + 1)] = mass;
        if (t < window_) {
            return false;
        }
        double old = hist_[(t - window_) % (window_ + 1)];
        return mass - old < gain_;
    }

   private:
    int64_t window_;
    double gain_;
    std::vector<double> hist_;
};

}  // namespace

const char *to_string(HitKind k) {
    return k == HitKind::Finite ? "finite" : "infinite";
}

const char *to_string(HitMethod m) {
    switch (m) {
        case HitMethod::ClosedForm:
            return "closed_form";
        case HitMethod::PseudoInverse:
            return "pseudo_inverse";
        case HitMethod::Series:
            return "series";
    }
    return "?";
}

void MeasuredWalkSpec::validate() const {
    int D = dim();
    if (U.rows() != U.cols() || D == 0) {
        throw std::invalid_argument("walk operator must be a non-empty square matrix");
    }
    check_mask(final_mask, D);
    if (rho0.rows() != D || rho0.cols() != D) {
        throw std::invalid_argument("initial density matrix has the wrong shape");
    }
    if (max_abs(rho0 - rho0.adjoint()) > 1e-12) {
        throw std::invalid_argument("initial density matrix is not Hermitian");
    }
    if (std::abs(rho0.trace().real() - 1.0) > 1e-12) {
        throw std::invalid_argument("initial density matrix must have trace 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(rho0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("initial density matrix is not positive semidefinite");
    }
}

MeasuredWalkSpec MeasuredWalkSpec::pure(const Mat &U, const BasisMask &final_mask, const Vec &psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("initial state is not normalized");
    }
    MeasuredWalkSpec s;
    s.U = U;
    s.final_mask = final_mask;
    s.rho0 = psi * psi.adjoint();
    s.psi0 = psi;
    s.validate();
    return s;
}

MeasuredWalkSpec MeasuredWalkSpec::mixed(const Mat &U, const BasisMask &final_mask, const Mat &rho) {
    MeasuredWalkSpec s;
    s.U = U;
    s.final_mask = final_mask;
    s.rho0 = rho;
    s.validate();
    return s;
}

BasisMask final_vertex_mask(const BasisIndexing &idx, const std::vector<int> &vertices) {
    BasisMask m(idx.total_dim, 0);
    for (int v : vertices) {
        if (v < 0 || v + 1 >= (int)idx.offsets.size()) {
            throw std::invalid_argument("final vertex out of range");
        }
        for (int i = idx.offsets[v]; i < idx.offsets[v + 1]; i++) {
            m[i] = 1;
        }
    }
    return m;
}

Vec symmetric_state(const BasisIndexing &idx, int v) {
    if (v < 0 || v + 1 >= (int)idx.offsets.size()) {
        throw std::invalid_argument("start vertex out of range");
    }
    int d = idx.offsets[v + 1] - idx.offsets[v];
    if (d == 0) {
        throw std::invalid_argument("start vertex has no colors");
    }
    Vec psi = Vec::Zero(idx.total_dim);
    psi.segment(idx.offsets[v], d).setConstant(1.0 / std::sqrt((double)d));
    return psi;
}

Vec basis_state(const BasisIndexing &idx, int v, int color) {
    if (v < 0 || v + 1 >= (int)idx.offsets.size()) {
        throw std::invalid_argument("start vertex out of range");
    }
    Vec psi = Vec::Zero(idx.total_dim);
    psi(idx.index(v, color)) = 1.0;
    return psi;
}

std::vector<double> first_hit_distribution(const MeasuredWalkSpec &spec, int64_t T) {
    if (T < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    SeriesState st(spec);
    std::vector<double> p(T);
    for (int64_t t = 0; t < T; t++) {
        p[t] = st.step();
    }
    return p;
}

HittingResult hitting_time_series(const MeasuredWalkSpec &spec, double epsilon, const SeriesOptions &opt) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    SeriesState st(spec);
    int64_t window = opt.stall_window > 0 ? opt.stall_window : 4 * (int64_t)spec.dim();
    StallDetector stall(window, opt.stall_gain);
    double mass = 0.0, tsum = 0.0;
    stall.push(0, 0.0);
    for (int64_t t = 1; t <= opt.step_cap; t++) {
        double p = st.step();
        mass += p;
        tsum += (double)t * p;
        if (mass >= 1.0 - epsilon) {
            HittingResult r;
            r.kind = HitKind::Finite;
            r.value = tsum;
            r.escape = std::max(0.0, 1.0 - mass);
            r.method = HitMethod::Series;
            r.arrival_mass = mass;
            r.truncation = t;
            return r;
        }
        if (stall.push(t, mass)) {
            HittingResult r;
            r.kind = HitKind::Infinite;
            r.value = INFINITY;
            r.escape = std::clamp(1.0 - mass, 0.0, 1.0);
            r.method = HitMethod::Series;
            r.arrival_mass = mass;
            r.truncation = t;
            return r;
        }
    }
    throw IndeterminateError("series reached the step cap without reaching mass 1 - epsilon or stalling");
}

int64_t concurrent_hitting_time(const MeasuredWalkSpec &spec, double p, const SeriesOptions &opt) {
    if (!(p > 0 && p < 1)) {
        throw std::invalid_argument("threshold must lie in (0, 1)");
    }
    SeriesState st(spec);
    int64_t window = opt.stall_window > 0 ? opt.stall_window : 4 * (int64_t)spec.dim();
    StallDetector stall(window, opt.stall_gain);
    stall.push(0, 0.0);
    double mass = 0.0;
    for (int64_t t = 1; t <= opt.step_cap; t++) {
        mass += st.step();
        if (mass >= p) {
            return t;
        }
        if (stall.push(t, mass)) {
            throw std::domain_error("arrival mass stalls at " + std::to_string(mass) + ", below the threshold");
        }
    }
    throw IndeterminateError("concurrent hitting time not reached within the step cap");
}

std::optional<int64_t> one_shot_hitting_time(const Mat &U, const Vec &start, const Vec &final_state, double p,
                                             int64_t t_max) {
    if (start.size() != U.rows() || final_state.size() != U.rows()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    Vec psi = start;
    for (int64_t t = 0; t <= t_max; t++) {
        if (t > 0) {
            psi = U * psi;
        }
        if (std::norm(final_state.dot(psi)) >= p) {
            return t;
        }
    }
    return std::nullopt;
}

Vec vectorize(const Mat &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("vectorize expects a square matrix");
    }
    int D = (int)m.rows();
    Vec v(D * D);
    for (int i = 0; i < D; i++) {
        for (int j = 0; j < D; j++) {
            v(i * D + j) = m(i, j);
        }
    }
    return v;
}

Mat devectorize(const Vec &v) {
    int D = (int)std::llround(std::sqrt((double)v.size()));
    if ((int64_t)D * D != v.size()) {
        throw std::invalid_argument("vector length is not a perfect square");
    }
    Mat m(D, D);
    for (int i = 0; i < D; i++) {
        for (int j = 0; j < D; j++) {
            m(i, j) = v(i * D + j);
        }
    }
    return m;
}

Mat solve_stein(const Mat &A, const Mat &R) {
    int D = (int)A.rows();
    if (A.cols() != D || R.rows() != D || R.cols() != D) {
        throw std::invalid_argument("Stein solve dimension mismatch");
    }
    Eigen::ComplexSchur<Mat> schur(A);
    if (schur.info() != Eigen::Success) {
        throw std::runtime_error("Schur decomposition failed");
    }
    const Mat &T = schur.matrixT();
    const Mat &Z = schur.matrixU();
    Mat Rt = Z.adjoint() * R * Z;
    Mat X = Mat::Zero(D, D);
    Mat M(D, D);
    for (int j = D - 1; j >= 0; j--) {
        int tail = D - 1 - j;
        Vec rhs = Rt.col(j);
        if (tail > 0) {
            Vec c = X.rightCols(tail) * T.row(j).tail(tail).adjoint();
            rhs += T * c;
        }
        M = -std::conj(T(j, j)) * T;
        M.diagonal().array() += 1.0;
        X.col(j) = M.triangularView<Eigen::Upper>().solve(rhs);
    }
    return Z * X * Z.adjoint();
}

SingularityInfo closed_form_singularity(const Mat &U, const BasisMask &final_mask, const ClosedFormOptions &opt) {
    int D = (int)U.rows();
    check_mask(final_mask, D);
    ClosedFormBackend b = opt.backend;
    if (b == ClosedFormBackend::Auto) {
        b = D <= 32 ? ClosedFormBackend::Dense : ClosedFormBackend::Schur;
    }
    SingularityInfo info;
    info.backend = b;
    Mat A = not_found_step(U, final_mask);
    if (b == ClosedFormBackend::Dense) {
        Mat M = Mat::Identity(D * D, D * D) - kron_conj(A);
        Eigen::BDCSVD<Mat> svd(M);
        const RVec &s = svd.singularValues();
        info.measure = s(s.size() - 1) / s(0);
    } else {
        Eigen::ComplexEigenSolver<Mat> es(A, false);
        double r = es.eigenvalues().cwiseAbs().maxCoeff();
        info.measure = 1.0 - r * r;
    }
    info.singular = info.measure < opt.singular_tol;
    return info;
}

namespace {

HittingResult closed_form_dense(const MeasuredWalkSpec &spec, const ClosedFormOptions &opt) {
    int D = spec.dim();
    int DD = D * D;
    Mat A = not_found_step(spec.U, spec.final_mask);
    Mat B = found_step(spec.U, spec.final_mask);
    Mat M = Mat::Identity(DD, DD) - kron_conj(A);
    Mat Y = kron_conj(B);
    Vec rv = vectorize(spec.rho0);
    Vec Iv = vectorize(Mat::Identity(D, D));

    Eigen::BDCSVD<Mat> svd_values(M);
    const RVec &s = svd_values.singularValues();
    double smax = s(0), smin = s(s.size() - 1);
    HittingResult r;
    if (smin > opt.singular_tol * smax) {
        Eigen::PartialPivLU<Mat> lu(M);
        Vec y = lu.solve(lu.solve(rv));
        r.kind = HitKind::Finite;
        r.method = HitMethod::ClosedForm;
        r.value = Iv.dot(Y * y).real();
        r.arrival_mass = 1.0;
        return r;
    }
    SpectralReport rep = infinite_hitting_projector(spec.U, spec.final_mask, opt.cluster_tol);
    double esc = escape_probability(rep, spec.rho0);
    if (esc > opt.escape_tol) {
        r.kind = HitKind::Infinite;
        r.method = HitMethod::PseudoInverse;
        r.value = INFINITY;
        r.escape = esc;
        r.arrival_mass = 1.0 - esc;
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
    r.value = Iv.dot(Y * y).real();
    r.escape = esc;
    r.arrival_mass = 1.0 - esc;
    return r;
}

HittingResult closed_form_schur(const MeasuredWalkSpec &spec, const ClosedFormOptions &opt) {
    Mat A = not_found_step(spec.U, spec.final_mask);
    Mat B = found_step(spec.U, spec.final_mask);
    ClosedFormOptions o = opt;
    o.backend = ClosedFormBackend::Schur;
    SingularityInfo info = closed_form_singularity(spec.U, spec.final_mask, o);
    HittingResult r;
    r.kind = HitKind::Finite;
    r.method = HitMethod::ClosedForm;
    r.arrival_mass = 1.0;
    if (info.singular) {
        SpectralReport rep = infinite_hitting_projector(spec.U, spec.final_mask, opt.cluster_tol);
        double esc = escape_probability(rep, spec.rho0);
        if (esc > opt.escape_tol) {
            r.kind = HitKind::Infinite;
            r.method = HitMethod::PseudoInverse;
            r.value = INFINITY;
            r.escape = esc;
            r.arrival_mass = 1.0 - esc;
            return r;
        }
        // P_hat reduces Q U, so removing it leaves the Moore-Penrose action on the complement.
        A = A * (Mat::Identity(A.rows(), A.cols()) - rep.P_hat);
        r.method = HitMethod::PseudoInverse;
        r.escape = esc;
        r.arrival_mass = 1.0 - esc;
    }
    Mat X = solve_stein(A, solve_stein(A, spec.rho0));
    r.value = (B * X * B.adjoint()).trace().real();
    return r;
}

}  // namespace

HittingResult hitting_time_closed_form(const MeasuredWalkSpec &spec, const ClosedFormOptions &opt) {
    spec.validate();
    int D = spec.dim();
    if (D > opt.max_dim) {
        throw std::invalid_argument("dimension " + std::to_string(D) + " exceeds the closed-form guard " +
                                    std::to_string(opt.max_dim));
    }
    ClosedFormBackend b = opt.backend;
    if (b == ClosedFormBackend::Auto) {
        b = D <= 32 ? ClosedFormBackend::Dense : ClosedFormBackend::Schur;
    }
    return b == ClosedFormBackend::Dense ? closed_form_dense(spec, opt) : closed_form_schur(spec, opt);
}

}  // namespace qwalk
