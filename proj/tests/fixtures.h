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

// Small builders shared by the test binaries.

#ifndef QWALK_TESTS_FIXTURES_H
#define QWALK_TESTS_FIXTURES_H

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/hitting.h"
#include "qwalk/quotient.h"

namespace fixture {

using namespace qwalk;

struct Case {
    std::string name;
    ColoredGraph graph;
    MeasuredWalkSpec spec;
};

/// Symmetric start at `start`, final vertex `final_vertex`.
inline Case make_case(const std::string &name, const ColoredGraph &g, const Coin &c, int start, int final_vertex) {
    BasisIndexing idx = g.indexing();
    Mat U = evolution_operator(g, c).matrix;
    return {name, g, MeasuredWalkSpec::pure(U, final_vertex_mask(idx, {final_vertex}), symmetric_state(idx, start))};
}

inline Case hypercube_case(int n, bool dft = false) {
    ColoredGraph g = build_hypercube(n);
    return make_case("hypercube" + std::to_string(n) + (dft ? "-dft" : "-grover"), g, dft ? dft_coin(n) : grover_coin(n),
                     0, (1 << n) - 1);
}

/// Mixed battery with D <= 128: cycles, small hypercubes, S3 Cayley graphs and the distorted cube.
inline std::vector<Case> battery() {
    std::vector<Case> out;
    out.push_back(make_case("cycle6-grover", build_cycle(6), grover_coin(2), 0, 3));
    out.push_back(make_case("cycle8-dft", build_cycle(8), dft_coin(2), 0, 3));
    out.push_back(make_case("cycle10-dft", build_cycle(10), dft_coin(2), 0, 5));
    out.push_back(hypercube_case(2));
    out.push_back(hypercube_case(2, true));
    out.push_back(hypercube_case(3));
    out.push_back(hypercube_case(3, true));
    CayleyGraph s32 = named_cayley("s3:2gen");
    out.push_back(make_case("s3-2gen-dft", s32.graph, dft_coin(2), 0, s32.vertex_of_word({1, 2, 1})));
    CayleyGraph s33 = named_cayley("s3:3gen");
    out.push_back(make_case("s3-3gen-grover", s33.graph, grover_coin(3), 0, s33.vertex_of_word({1, 2})));
    out.push_back(make_case("s3-3gen-dft", s33.graph, dft_coin(3), 0, s33.vertex_of_word({1, 2})));
    out.push_back(make_case("distorted3-grover", build_distorted_hypercube(3), grover_coin(3), 0, 7));
    out.push_back(make_case("distorted3-dft", build_distorted_hypercube(3), dft_coin(3), 0, 7));
    // A basis-state start on the cube, which overlaps the non-arriving subspace.
    {
        ColoredGraph g = build_hypercube(3);
        BasisIndexing idx = g.indexing();
        Mat U = evolution_operator(g, grover_coin(3)).matrix;
        out.push_back({"hypercube3-grover-basis", g,
                       MeasuredWalkSpec::pure(U, final_vertex_mask(idx, {7}), basis_state(idx, 0, 1))});
    }
    return out;
}

/// Orbit index of each listed group of (vertex, color) pairs. Throws unless every group is exactly one orbit.
inline std::vector<int> locate_orbits(const OrbitBasis &ob, const BasisIndexing &idx,
                                      const std::vector<std::vector<std::pair<int, int>>> &groups) {
    std::vector<int> of = ob.orbit_of(), out;
    for (const auto &grp : groups) {
        int o = of[idx.index(grp[0].first, grp[0].second)];
        if (ob.orbits[o].size() != grp.size()) {
            throw std::runtime_error("orbit size mismatch");
        }
        for (const auto &[v, c] : grp) {
            if (of[idx.index(v, c)] != o) {
                throw std::runtime_error("listed states split across orbits");
            }
        }
        out.push_back(o);
    }
    return out;
}

/// R(i, j) = M(order[i], order[j]).
inline Mat reorder(const Mat &M, const std::vector<int> &order) {
    Mat R(order.size(), order.size());
    for (size_t i = 0; i < order.size(); i++) {
        for (size_t j = 0; j < order.size(); j++) {
            R(i, j) = M(order[i], order[j]);
        }
    }
    return R;
}

/// Automorphisms lifted from direction permutations in cycle notation.
inline std::vector<Permutation> lifts(const ColoredGraph &g, const std::vector<std::string> &cycles) {
    int d = g.regular_degree().value();
    std::vector<Permutation> out;
    for (const auto &c : cycles) {
        out.push_back(direction_perm_to_automorphism(g, parse_cycles(c, d)));
    }
    return out;
}

}  // namespace fixture

#endif
