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

#include "qwalk/groups.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace qwalk {

Permutation identity_perm(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    Permutation r(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        r[i] = a[b[i]];
    }
    return r;
}

Permutation inverse(const Permutation &p) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); i++) {
        r[p[i]] = (int)i;
    }
    return r;
}

bool is_permutation(const Permutation &p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= (int)p.size() || seen[x]) {
            return false;
        }
        seen[x] = 1;
    }
    return true;
}

Mat permutation_matrix(const Permutation &p) {
    int n = (int)p.size();
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; i++) {
        m(p[i], i) = 1.0;
    }
    return m;
}

std::vector<int> parse_cycles(const std::string &text, int degree) {
    if (degree < 1) {
        throw std::invalid_argument("degree must be positive");
    }
    std::vector<int> image = identity_perm(degree);
    std::vector<char> used(degree, 0);
    size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && std::isspace((unsigned char)text[i])) {
            i++;
        }
    };
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("bad cycle notation '" + text + "': " + why);
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') {
            fail("expected '('");
        }
        i++;
        std::vector<int> cyc;
        skip_ws();
        while (true) {
            if (i >= text.size()) {
                fail("unterminated cycle");
            }
            if (text[i] == ')') {
                i++;
                break;
            }
            if (!std::isdigit((unsigned char)text[i])) {
                fail("expected a number");
            }
            int x = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) {
                x = x * 10 + (text[i] - '0');
                if (x > 1000000) {
                    fail("symbol too large");
                }
                i++;
            }
            if (x < 1 || x > degree) {
                fail("symbol " + std::to_string(x) + " outside 1.." + std::to_string(degree));
            }
            if (used[x - 1]) {
                fail("symbol " + std::to_string(x) + " repeated");
            }
            used[x - 1] = 1;
            cyc.push_back(x - 1);
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                i++;
                skip_ws();
                if (i < text.size() && text[i] == ')') {
                    fail("trailing comma");
                }
            } else if (i < text.size() && text[i] != ')') {
                fail("expected ',' or ')'");
            }
        }
        for (size_t k = 0; k < cyc.size(); k++) {
            image[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
        skip_ws();
    }
    return image;
}

Permutation direction_perm_to_automorphism(const ColoredGraph &g, const std::vector<int> &pi, int root) {
    if (!g.consistently_colored()) {
        throw std::invalid_argument("direction permutations need a consistently colored regular graph");
    }
    int d = *g.regular_degree();
    if ((int)pi.size() != d || !is_permutation(pi)) {
        throw std::invalid_argument("direction permutation has the wrong size or is not a permutation");
    }
    int N = g.num_vertices();
    std::vector<int> vmap(N, -1);
    vmap[root] = root;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto &[c, e] : g.edges_at(v)) {
            if (vmap[e.to] < 0) {
                vmap[e.to] = g.neighbor(vmap[v], pi[c - 1] + 1);
                queue.push_back(e.to);
            }
        }
    }
    std::vector<char> hit(N, 0);
    for (int v = 0; v < N; v++) {
        if (vmap[v] < 0) {
            throw std::invalid_argument("graph is disconnected; direction permutation is not determined");
        }
        if (hit[vmap[v]]++) {
            throw std::invalid_argument("induced vertex map is not a bijection");
        }
        for (const auto &[c, e] : g.edges_at(v)) {
            if (vmap[e.to] != g.neighbor(vmap[v], pi[c - 1] + 1)) {
                throw std::invalid_argument("direction permutation does not induce an automorphism");
            }
        }
    }
    BasisIndexing idx = g.indexing();
    Permutation p(idx.total_dim);
    for (int v = 0; v < N; v++) {
        for (int c = 1; c <= d; c++) {
            p[idx.index(v, c)] = idx.index(vmap[v], pi[c - 1] + 1);
        }
    }
    return p;
}

Permutation vertex_perm_to_basis(const ColoredGraph &g, const std::vector<int> &vertex_image) {
    if ((int)vertex_image.size() != g.num_vertices() || !is_permutation(vertex_image)) {
        throw std::invalid_argument("vertex image is not a permutation of the vertices");
    }
    BasisIndexing idx = g.indexing();
    Permutation p(idx.total_dim);
    for (int v = 0; v < g.num_vertices(); v++) {
        for (const auto &kv : g.edges_at(v)) {
            p[idx.index(v, kv.first)] = idx.index(vertex_image[v], kv.first);
        }
    }
    return p;
}

Permutation left_translation(const CayleyGraph &cg, int element) {
    const PointPerm &h = cg.elements.at(element);
    std::vector<int> vimg(cg.elements.size());
    for (size_t k = 0; k < cg.elements.size(); k++) {
        vimg[k] = cg.index_of(compose_points(h, cg.elements[k]));
    }
    return vertex_perm_to_basis(cg.graph, vimg);
}

bool is_automorphism(const ColoredGraph &g, const Permutation &p) {
    std::vector<int> s = shift_permutation(g);
    if (p.size() != s.size()) {
        throw std::invalid_argument("permutation dimension does not match the walk basis");
    }
    if (!is_permutation(p)) {
        return false;
    }
    for (size_t i = 0; i < s.size(); i++) {
        if (p[s[i]] != s[p[i]]) {
            return false;
        }
    }
    return true;
}

PermGroup closure(const std::vector<Permutation> &gens, int degree, int max_order) {
    for (const auto &g : gens) {
        if ((int)g.size() != degree || !is_permutation(g)) {
            throw std::invalid_argument("generator is not a permutation of the given degree");
        }
    }
    PermGroup grp;
    grp.degree = degree;
    grp.generators = gens;
    std::set<Permutation> seen;
    Permutation e = identity_perm(degree);
    grp.elements.push_back(e);
    seen.insert(e);
    for (size_t k = 0; k < grp.elements.size(); k++) {
        for (const auto &g : gens) {
            Permutation h = compose(g, grp.elements[k]);
            if (seen.insert(h).second) {
                grp.elements.push_back(h);
                if ((int)grp.elements.size() > max_order) {
                    throw std::length_error("group order exceeds " + std::to_string(max_order));
                }
            }
        }
    }
    return grp;
}

std::vector<std::vector<int>> orbits(const std::vector<Permutation> &gens, int degree) {
    std::vector<int> parent = identity_perm(degree);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &g : gens) {
        if ((int)g.size() != degree) {
            throw std::invalid_argument("generator degree mismatch");
        }
        for (int i = 0; i < degree; i++) {
            int a = find(i), b = find(g[i]);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(degree, -1);
    for (int i = 0; i < degree; i++) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = (int)out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

std::vector<std::vector<int>> orbits(const PermGroup &grp) {
    return orbits(grp.generators, grp.degree);
}

}  // namespace qwalk
