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

#ifndef QWALK_GRAPHS_H
#define QWALK_GRAPHS_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/types.h"

namespace qwalk {

/// Far end of a colored half edge.
struct HalfEdge {
    int to;
    int to_color;
    bool operator==(const HalfEdge &other) const = default;
};

/// Position of every (vertex, color) pair in the flat walk basis.
struct BasisIndexing {
    std::vector<int> offsets;            // size N + 1
    std::vector<std::vector<int>> colors;  // sorted colors per vertex
    int total_dim = 0;

    int index(int v, int c) const;
    int vertex_of(int flat) const;
    int color_of(int flat) const;
};

/// Undirected graph with a color at each end of every edge. Colors are positive integers.
///
/// A self loop is allowed (needed for quotient graphs). Adding (v, c, v, c) maps |v,c> to itself under
/// the shift; (v, c, v, c') with c != c' swaps the two slots.
class ColoredGraph {
   public:
    ColoredGraph() = default;
    explicit ColoredGraph(int num_vertices);

    /// Throws std::invalid_argument if a vertex is out of range, a color is < 1 or a color is reused.
    void add_edge(int u, int cu, int v, int cv);

    int num_vertices() const {
        return (int)adj_.size();
    }
    const std::map<int, HalfEdge> &edges_at(int v) const {
        return adj_.at(v);
    }
    int degree(int v) const {
        return (int)adj_.at(v).size();
    }
    /// Number of undirected edges, self loops counted once.
    int num_edges() const;
    std::optional<int> regular_degree() const;
    /// d-regular, colors exactly 1..d at every vertex and the same color at both ends of each edge.
    bool consistently_colored() const;
    BasisIndexing indexing() const;
    /// Re-checks every invariant. Throws std::invalid_argument on violation.
    void validate() const;
    /// Neighbor across color c, or -1.
    int neighbor(int v, int c) const;

    bool operator==(const ColoredGraph &other) const {
        return adj_ == other.adj_;
    }

    /// Presentation-only labels (bit strings, permutation words). May be empty.
    std::vector<std::string> labels;

   private:
    std::vector<std::map<int, HalfEdge>> adj_;
};

ColoredGraph build_hypercube(int n);
ColoredGraph build_cycle(int n);
/// Two vertices joined by one edge of color 1.
ColoredGraph build_edge();
ColoredGraph build_distorted_hypercube(int n);
ColoredGraph build_glued_trees(int depth);
/// Column (0..2*depth) of each vertex of build_glued_trees(depth).
std::vector<int> glued_trees_columns(int depth);

/// A permutation of {0..m-1} given by its image array.
using PointPerm = std::vector<int>;

struct CayleyGraph {
    ColoredGraph graph;
    std::vector<PointPerm> elements;    // vertex id -> group element
    std::vector<PointPerm> generators;  // color i+1 -> generators[i]
    int index_of(const PointPerm &g) const;
    /// Vertex reached from the identity by following the colors in order (1-based).
    int vertex_of_word(const std::vector<int> &colors) const;
};

/// (a*b)(x) = a(b(x)).
PointPerm compose_points(const PointPerm &a, const PointPerm &b);
/// Transposition of points i and j (0-based) on m points.
PointPerm transposition(int m, int i, int j);

/// Colored Cayley graph: vertex per element, color i edge from g to g*s_i.
///
/// If `elements` is empty the group is generated by breadth-first search from the identity and
/// vertices are numbered in that order. Otherwise vertices follow the given order, and the list must be
/// exactly the generated group.
CayleyGraph build_cayley(const std::vector<PointPerm> &generators, const std::vector<PointPerm> &elements = {},
                         bool colored = true);

/// Named Cayley graphs used throughout: "s3:2gen", "s3:3gen", "s4:3gen".
CayleyGraph named_cayley(const std::string &name);

/// S = sum |w, c'><v, c|. Permutation matrix of size D.
Mat shift_matrix(const ColoredGraph &g);
/// The same permutation as an image array over flat indices.
std::vector<int> shift_permutation(const ColoredGraph &g);
RMat adjacency_matrix(const ColoredGraph &g);

std::string graph_to_json(const ColoredGraph &g);
ColoredGraph graph_from_json(const std::string &text);

}  // namespace qwalk

#endif
