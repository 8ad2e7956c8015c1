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

#include "qwalk/graphs.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace qwalk {

namespace {

std::string bit_label(int v, int n) {
    std::string s(n, '0');
    for (int b = 0; b < n; b++) {
        if (v >> b & 1) {
            s[n - 1 - b] = '1';
        }
    }
    return s;
}

}  // namespace

int BasisIndexing::index(int v, int c) const {
    const auto &cs = colors.at(v);
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " has no color " + std::to_string(c));
    }
    return offsets[v] + (int)(it - cs.begin());
}

int BasisIndexing::vertex_of(int flat) const {
    if (flat < 0 || flat >= total_dim) {
        throw std::out_of_range("flat index out of range");
    }
    auto it = std::upper_bound(offsets.begin(), offsets.end(), flat);
    return (int)(it - offsets.begin()) - 1;
}

int BasisIndexing::color_of(int flat) const {
    int v = vertex_of(flat);
    return colors[v][flat - offsets[v]];
}

ColoredGraph::ColoredGraph(int num_vertices) {
    if (num_vertices < 0) {
        throw std::invalid_argument("negative vertex count");
    }
    adj_.resize(num_vertices);
}

void ColoredGraph::add_edge(int u, int cu, int v, int cv) {
    int n = num_vertices();
    if (u < 0 || u >= n || v < 0 || v >= n) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (cu < 1 || cv < 1) {
        throw std::invalid_argument("colors must be >= 1");
    }
    if (adj_[u].count(cu) || adj_[v].count(cv)) {
        throw std::invalid_argument("color reused at a vertex");
    }
    adj_[u][cu] = HalfEdge{v, cv};
    adj_[v][cv] = HalfEdge{u, cu};
}

int ColoredGraph::num_edges() const {
    int count = 0;
    for (int v = 0; v < num_vertices(); v++) {
        for (const auto &[c, e] : adj_[v]) {
            if (std::make_pair(v, c) <= std::make_pair(e.to, e.to_color)) {
                count++;
            }
        }
    }
    return count;
}

std::optional<int> ColoredGraph::regular_degree() const {
    if (adj_.empty()) {
        return std::nullopt;
    }
    int d = degree(0);
    for (const auto &m : adj_) {
        if ((int)m.size() != d) {
            return std::nullopt;
        }
    }
    return d;
}

bool ColoredGraph::consistently_colored() const {
    auto d = regular_degree();
    if (!d) {
        return false;
    }
    for (int v = 0; v < num_vertices(); v++) {
        int expect = 1;
        for (const auto &[c, e] : adj_[v]) {
            if (c != expect++ || e.to_color != c) {
                return false;
            }
        }
    }
    return true;
}

BasisIndexing ColoredGraph::indexing() const {
    BasisIndexing idx;
    idx.offsets.resize(num_vertices() + 1, 0);
    idx.colors.resize(num_vertices());
    for (int v = 0; v < num_vertices(); v++) {
        for (const auto &kv : adj_[v]) {
            idx.colors[v].push_back(kv.first);
        }
        idx.offsets[v + 1] = idx.offsets[v] + (int)adj_[v].size();
    }
    idx.total_dim = idx.offsets.back();
    return idx;
}

void ColoredGraph::validate() const {
    for (int v = 0; v < num_vertices(); v++) {
        for (const auto &[c, e] : adj_[v]) {
            if (c < 1 || e.to < 0 || e.to >= num_vertices()) {
                throw std::invalid_argument("malformed half edge at vertex " + std::to_string(v));
            }
            auto it = adj_[e.to].find(e.to_color);
            if (it == adj_[e.to].end() || it->second != HalfEdge{v, c}) {
                throw std::invalid_argument("edge at vertex " + std::to_string(v) + " color " + std::to_string(c) +
                                            " has no matching reverse half edge");
            }
        }
    }
}

int ColoredGraph::neighbor(int v, int c) const {
    auto it = adj_.at(v).find(c);
    return it == adj_[v].end() ? -1 : it->second.to;
}

ColoredGraph build_hypercube(int n) {
    if (n < 1 || n > 20) {
        throw std::invalid_argument("hypercube dimension must be in [1, 20]");
    }
    int N = 1 << n;
    ColoredGraph g(N);
    for (int v = 0; v < N; v++) {
        for (int b = 0; b < n; b++) {
            int w = v ^ (1 << b);
            if (v < w) {
                g.add_edge(v, b + 1, w, b + 1);
            }
        }
        g.labels.push_back(bit_label(v, n));
    }
    return g;
}

ColoredGraph build_cycle(int n) {
    if (n < 2) {
        throw std::invalid_argument("cycle needs at least 2 vertices");
    }
    if (n % 2) {
        // Odd cycles cannot be properly 2-edge-colored; use per-end colors: 1 leaves clockwise, 2 counter.
        ColoredGraph g(n);
        for (int v = 0; v < n; v++) {
            g.add_edge(v, 1, (v + 1) % n, 2);
        }
        return g;
    }
    ColoredGraph g(n);
    for (int v = 0; v < n; v++) {
        int c = v % 2 == 0 ? 1 : 2;
        if (n == 2) {
            if (v == 0) {
                g.add_edge(0, 1, 1, 1);
                g.add_edge(0, 2, 1, 2);
            }
            continue;
        }
        g.add_edge(v, c, (v + 1) % n, c);
    }
    return g;
}

ColoredGraph build_edge() {
    ColoredGraph g(2);
    g.add_edge(0, 1, 1, 1);
    return g;
}

ColoredGraph build_distorted_hypercube(int n) {
    if (n < 2) {
        throw std::invalid_argument("distorted hypercube needs n >= 2");
    }
    ColoredGraph h = build_hypercube(n);
    ColoredGraph g(h.num_vertices());
    g.labels = h.labels;
    // A,B,C,D = 0,1,2,3. A-B and C-D are the color 1 edges among them; replace by A-D and B-C.
    for (int v = 0; v < h.num_vertices(); v++) {
        for (const auto &[c, e] : h.edges_at(v)) {
            if (v >= e.to) {
                continue;
            }
            if ((v == 0 && e.to == 1) || (v == 2 && e.to == 3)) {
                continue;
            }
            g.add_edge(v, c, e.to, e.to_color);
        }
    }
    g.add_edge(0, 1, 3, 1);
    g.add_edge(1, 1, 2, 1);
    return g;
}

std::vector<int> glued_trees_columns(int depth) {
    if (depth < 1 || depth > 16) {
        throw std::invalid_argument("glued trees depth must be in [1, 16]");
    }
    std::vector<int> col;
    for (int j = 0; j <= 2 * depth; j++) {
        int size = 1 << std::min(j, 2 * depth - j);
        col.insert(col.end(), size, j);
    }
    return col;
}

ColoredGraph build_glued_trees(int depth) {
    std::vector<int> col = glued_trees_columns(depth);
    int n = depth;
    std::vector<int> start(2 * n + 2, 0);
    for (int j = 0; j <= 2 * n; j++) {
        start[j + 1] = start[j] + (1 << std::min(j, 2 * n - j));
    }
    ColoredGraph g((int)col.size());
    auto connect = [&](int a, int b) {
        int c = 1;
        while (g.edges_at(a).count(c) || g.edges_at(b).count(c)) {
            c++;
        }
        g.add_edge(a, c, b, c);
    };
    // Left tree: vertex k of column j hangs off vertex k/2 of column j-1. Right tree mirrors it.
    for (int j = 1; j <= n; j++) {
        for (int k = 0; k < (1 << j); k++) {
            connect(start[j - 1] + k / 2, start[j] + k);
        }
    }
    for (int j = 2 * n - 1; j >= n; j--) {
        int size = 1 << (2 * n - j);
        for (int k = 0; k < size; k++) {
            connect(start[j + 1] + k / 2, start[j] + k);
        }
    }
    for (int v = 0; v < g.num_vertices(); v++) {
        g.labels.push_back("c" + std::to_string(col[v]) + "." + std::to_string(v - start[col[v]]));
    }
    return g;
}

PointPerm compose_points(const PointPerm &a, const PointPerm &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    PointPerm r(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        r[i] = a[b[i]];
    }
    return r;
}

PointPerm transposition(int m, int i, int j) {
    PointPerm p(m);
    for (int k = 0; k < m; k++) {
        p[k] = k;
    }
    std::swap(p[i], p[j]);
    return p;
}

int CayleyGraph::index_of(const PointPerm &g) const {
    auto it = std::find(elements.begin(), elements.end(), g);
    if (it == elements.end()) {
        throw std::invalid_argument("not a group element");
    }
    return (int)(it - elements.begin());
}

int CayleyGraph::vertex_of_word(const std::vector<int> &colors) const {
    PointPerm e(elements.at(0).size());
    for (size_t i = 0; i < e.size(); i++) {
        e[i] = (int)i;
    }
    int v = index_of(e);
    for (int c : colors) {
        v = graph.neighbor(v, c);
        if (v < 0) {
            throw std::invalid_argument("word uses a missing color");
        }
    }
    return v;
}

CayleyGraph build_cayley(const std::vector<PointPerm> &generators, const std::vector<PointPerm> &elements,
                         bool colored) {
    if (generators.empty()) {
        throw std::invalid_argument("empty generating set");
    }
    size_t m = generators[0].size();
    PointPerm e(m);
    for (size_t i = 0; i < m; i++) {
        e[i] = (int)i;
    }
    for (const auto &s : generators) {
        if (s.size() != m) {
            throw std::invalid_argument("generators act on different point sets");
        }
        std::vector<char> seen(m, 0);
        for (int x : s) {
            if (x < 0 || x >= (int)m || seen[x]++) {
                throw std::invalid_argument("generator is not a permutation");
            }
        }
        if (s == e) {
            throw std::invalid_argument("identity in generating set");
        }
        if (colored && compose_points(s, s) != e) {
            throw std::invalid_argument("colored Cayley graph needs involutive generators");
        }
    }

    std::vector<PointPerm> order{e};
    std::map<PointPerm, int> where{{e, 0}};
    for (size_t k = 0; k < order.size(); k++) {
        for (const auto &s : generators) {
            PointPerm h = compose_points(order[k], s);
            if (!where.count(h)) {
                where[h] = (int)order.size();
                order.push_back(h);
                if (order.size() > 40320) {
                    throw std::invalid_argument("group too large for a dense walk");
                }
            }
        }
    }
    if (!elements.empty()) {
        std::set<PointPerm> given(elements.begin(), elements.end());
        if (given.size() != elements.size() || given != std::set<PointPerm>(order.begin(), order.end())) {
            throw std::invalid_argument("element list is not the group generated by the generators");
        }
        order = elements;
        where.clear();
        for (size_t k = 0; k < order.size(); k++) {
            where[order[k]] = (int)k;
        }
    }

    CayleyGraph out;
    out.elements = order;
    out.generators = generators;
    out.graph = ColoredGraph((int)order.size());
    int d = (int)generators.size();
    for (size_t k = 0; k < order.size(); k++) {
        for (int i = 0; i < d; i++) {
            int w = where.at(compose_points(order[k], generators[i]));
            if (colored) {
                if ((int)k <= w) {
                    out.graph.add_edge((int)k, i + 1, w, i + 1);
                }
            } else {
                out.graph.add_edge((int)k, i + 1, w, d + i + 1);
            }
        }
    }
    return out;
}

CayleyGraph named_cayley(const std::string &name) {
    if (name == "s3:2gen") {
        return build_cayley({transposition(3, 0, 1), transposition(3, 1, 2)});
    }
    if (name == "s3:3gen") {
        return build_cayley({transposition(3, 0, 1), transposition(3, 1, 2), transposition(3, 0, 2)});
    }
    if (name == "s4:3gen") {
        return build_cayley({transposition(4, 0, 1), transposition(4, 0, 2), transposition(4, 0, 3)});
    }
    throw std::invalid_argument("unknown Cayley graph '" + name + "'");
}

std::vector<int> shift_permutation(const ColoredGraph &g) {
    BasisIndexing idx = g.indexing();
    std::vector<int> image(idx.total_dim);
    for (int v = 0; v < g.num_vertices(); v++) {
        for (const auto &[c, e] : g.edges_at(v)) {
            image[idx.index(v, c)] = idx.index(e.to, e.to_color);
        }
    }
    return image;
}

Mat shift_matrix(const ColoredGraph &g) {
    std::vector<int> image = shift_permutation(g);
    int D = (int)image.size();
    Mat S = Mat::Zero(D, D);
    for (int i = 0; i < D; i++) {
        S(image[i], i) = 1.0;
    }
    return S;
}

RMat adjacency_matrix(const ColoredGraph &g) {
    int N = g.num_vertices();
    RMat A = RMat::Zero(N, N);
    for (int v = 0; v < N; v++) {
        for (const auto &[c, e] : g.edges_at(v)) {
            if (e.to != v) {
                A(v, e.to) = 1.0;
            }
        }
    }
    return A;
}

}  // namespace qwalk
