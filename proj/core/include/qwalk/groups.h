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

#ifndef QWALK_GROUPS_H
#define QWALK_GROUPS_H

#include <string>
#include <vector>

#include "qwalk/graphs.h"

namespace qwalk {

/// Image array over flat basis indices: index i goes to image[i].
using Permutation = std::vector<int>;

Permutation identity_perm(int n);
/// (a*b)[i] = a[b[i]], i.e. apply b first.
Permutation compose(const Permutation &a, const Permutation &b);
Permutation inverse(const Permutation &p);
bool is_permutation(const Permutation &p);
/// Column i of the result is e_{p[i]}.
Mat permutation_matrix(const Permutation &p);

/// Parses cycle notation over directions 1..degree, e.g. "(1,2)(3,4)". Returns a 0-based image array.
/// "(1,2,3)" sends 1 to 2, 2 to 3 and 3 to 1. The empty string is the identity.
std::vector<int> parse_cycles(const std::string &text, int degree);

/// Lifts a permutation of directions to a basis permutation of a consistently colored regular graph.
///
/// The vertex map is grown by breadth-first search from `root` (fixed), following
/// map(w) = neighbor(map(v), pi(c)) across each color c edge v -> w. Every edge is then re-checked.
/// Throws std::invalid_argument when the induced map is not a well defined automorphism.
Permutation direction_perm_to_automorphism(const ColoredGraph &g, const std::vector<int> &pi, int root = 0);

/// Direction preserving lift (P_v tensor I_c) of a vertex permutation. Colors are kept.
Permutation vertex_perm_to_basis(const ColoredGraph &g, const std::vector<int> &vertex_image);

/// Left translation x -> g x of a Cayley graph, as a basis permutation.
Permutation left_translation(const CayleyGraph &cg, int element);

/// True iff p S p^-1 = S, checked on the integer shift permutation.
bool is_automorphism(const ColoredGraph &g, const Permutation &p);

struct PermGroup {
    std::vector<Permutation> elements;  // elements[0] is the identity
    std::vector<Permutation> generators;
    int degree = 0;
};

/// Breadth-first products of the generators. Throws std::length_error past max_order elements.
PermGroup closure(const std::vector<Permutation> &gens, int degree, int max_order = 10080);

/// Orbits of [0, degree) under the group generated by gens. Sorted by smallest member; members sorted.
std::vector<std::vector<int>> orbits(const std::vector<Permutation> &gens, int degree);
std::vector<std::vector<int>> orbits(const PermGroup &grp);

}  // namespace qwalk

#endif
