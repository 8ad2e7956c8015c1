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

#ifndef QWALK_HITTING_H
#define QWALK_HITTING_H

#include <cstdint>
#include <optional>
#include <vector>

#include "qwalk/graphs.h"
#include "qwalk/walk.h"

namespace qwalk {

/// Walk operator, final projector (as a basis mask) and initial density matrix.
struct MeasuredWalkSpec {
    Mat U;
    BasisMask final_mask;
    Mat rho0;
    /// Set when rho0 is pure; lets the series routines iterate a vector.
    std::optional<Vec> psi0;

    int dim() const {
        return (int)U.rows();
    }
    /// Throws std::invalid_argument when an invariant fails.
    void validate() const;

    static MeasuredWalkSpec pure(const Mat &U, const BasisMask &final_mask, const Vec &psi);
    static MeasuredWalkSpec mixed(const Mat &U, const BasisMask &final_mask, const Mat &rho);
};

/// Mask covering every color slot of the given vertices.
BasisMask final_vertex_mask(const BasisIndexing &idx, const std::vector<int> &vertices);
/// Vertex v with an equal superposition of its colors.
Vec symmetric_state(const BasisIndexing &idx, int v);
Vec basis_state(const BasisIndexing &idx, int v, int color);

enum class HitKind { Finite, Infinite };
enum class HitMethod { ClosedForm, PseudoInverse, Series };
const char *to_string(HitKind k);
const char *to_string(HitMethod m);

struct HittingResult {
    HitKind kind = HitKind::Finite;
    double value = 0.0;    // expected steps when Finite
    double escape = 0.0;   // probability of never arriving
    HitMethod method = HitMethod::ClosedForm;
    double arrival_mass = 0.0;
    int64_t truncation = 0;  // steps used by the series
};

/// p(1..T): probability of first detection at step t.
std::vector<double> first_hit_distribution(const MeasuredWalkSpec &spec, int64_t T);

struct SeriesOptions {
    int64_t step_cap = 1000000;
    double stall_gain = 1e-12;
    int64_t stall_window = 0;  // 0 means 4 D
};

/// tau_est(eps) = sum of t p(t) up to the first step where the arrival mass reaches 1 - eps.
/// Reports Infinite when the mass stalls first; throws IndeterminateError when the cap is hit.
HittingResult hitting_time_series(const MeasuredWalkSpec &spec, double epsilon, const SeriesOptions &opt = {});

/// Least T with cumulative arrival mass >= p. Throws std::domain_error if the mass stalls below p and
/// IndeterminateError at the step cap.
int64_t concurrent_hitting_time(const MeasuredWalkSpec &spec, double p, const SeriesOptions &opt = {});

/// Least t <= t_max with |<final|U^t|start>|^2 >= p for the unmeasured walk.
std::optional<int64_t> one_shot_hitting_time(const Mat &U, const Vec &start, const Vec &final_state, double p,
                                             int64_t t_max);

/// Row stacking: (i, j) -> i D + j.
Vec vectorize(const Mat &m);
Mat devectorize(const Vec &v);

enum class ClosedFormBackend {
    Auto,   // Dense for D <= 32, Schur otherwise
    Dense,  // explicit D^2 x D^2 superoperators, SVD and Moore-Penrose
    Schur,  // Stein equation solved in the Schur basis of Q U, O(D^3)
};

struct ClosedFormOptions {
    ClosedFormBackend backend = ClosedFormBackend::Auto;
    int max_dim = 512;
    double singular_tol = 1e-9;  // relative smallest singular value
    double escape_tol = 1e-9;
    double cluster_tol = 1e-8;
};

/// Diagnostic for the invertibility of I - N.
struct SingularityInfo {
    double measure = 0.0;  // sigma_min / sigma_max (Dense) or 1 - rho(QU)^2 (Schur)
    bool singular = false;
    ClosedFormBackend backend = ClosedFormBackend::Dense;
};

SingularityInfo closed_form_singularity(const Mat &U, const BasisMask &final_mask, const ClosedFormOptions &opt = {});

/// tau = I^v . Y (I - N)^-2 rho^v with N = (Q U) x (Q U)*, Y = (P U) x (P U)*.
/// Singular I - N: Infinite when the escape probability exceeds escape_tol, otherwise the
/// pseudo-inverse value.
HittingResult hitting_time_closed_form(const MeasuredWalkSpec &spec, const ClosedFormOptions &opt = {});

/// Solves X - A X A^dagger = R for X. A must have spectral radius < 1.
Mat solve_stein(const Mat &A, const Mat &R);

/// Expected first-passage time from vertex 0 to vertex 1...1 of the n-cube, via the Delta(x) recursion.
double classical_hypercube_hitting(int n);
/// The same quantity from the closed binomial sum.
double classical_hypercube_hitting_sum(int n);

struct MonteCarloResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    int64_t trials = 0;
    uint64_t seed = 0;
};

/// Simple random walk first-passage times. Trial k uses its own mt19937_64 seeded from (seed, k).
MonteCarloResult classical_hitting_monte_carlo(const ColoredGraph &g, int start, int final_vertex, int64_t trials,
                                               uint64_t seed, int64_t step_cap = 100000000);

}  // namespace qwalk

#endif
