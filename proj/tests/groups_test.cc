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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "qwalk/groups.h"

using namespace qwalk;

namespace {

// Orbits by repeatedly applying every element of an explicit group until nothing changes.
std::vector<std::vector<int>> brute_orbits(const PermGroup &grp) {
    std::vector<std::vector<int>> out;
    std::vector<char> done(grp.degree, 0);
    for (int x = 0; x < grp.degree; x++) {
        if (done[x]) {
            continue;
        }
        std::set<int> orb;
        for (const auto &g : grp.elements) {
            orb.insert(g[x]);
        }
        for (int y : orb) {
            done[y] = 1;
        }
        out.emplace_back(orb.begin(), orb.end());
    }
    return out;
}

}  // namespace

TEST(Permutations, ComposeAppliesRightFirst) {
    Permutation a{1, 2, 0}, b{0, 2, 1};
    EXPECT_EQ(compose(a, b), (Permutation{1, 0, 2}));
    EXPECT_EQ(compose(a, inverse(a)), identity_perm(3));
    EXPECT_TRUE(is_permutation(a));
    EXPECT_FALSE(is_permutation({0, 0, 1}));
    EXPECT_FALSE(is_permutation({0, 3}));
    Mat P = permutation_matrix(a);
    EXPECT_EQ(P(1, 0), cplx(1));
    EXPECT_EQ(permutation_matrix(compose(a, b)), P * permutation_matrix(b));
}

TEST(ParseCycles, Basics) {
    EXPECT_EQ(parse_cycles("", 3), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(parse_cycles("(1,2)", 3), (std::vector<int>{1, 0, 2}));
    EXPECT_EQ(parse_cycles("(1,2,3)", 3), (std::vector<int>{1, 2, 0}));
    EXPECT_EQ(parse_cycles("(1,2)(3,4)", 4), (std::vector<int>{1, 0, 3, 2}));
    EXPECT_EQ(parse_cycles(" ( 2 , 3 ) ", 3), (std::vector<int>{0, 2, 1}));
}

TEST(ParseCycles, Rejects) {
    for (const char *bad : {"(1,2", "1,2)", "(1,1)", "(1,2)(2,3)", "(0,1)", "(1,4)", "(1,2,)", "(a,b)", "()x"}) {
        EXPECT_THROW(parse_cycles(bad, 3), std::invalid_argument) << bad;
    }
}

TEST(Automorphism, HypercubeDirectionSwaps) {
    ColoredGraph g = build_hypercube(3);
    for (const char *cyc : {"(1,2)", "(2,3)", "(1,2,3)", "(1,3)"}) {
        Permutation p = direction_perm_to_automorphism(g, parse_cycles(cyc, 3));
        EXPECT_TRUE(is_permutation(p));
        EXPECT_TRUE(is_automorphism(g, p)) << cyc;
    }
    // (1,2) swaps the two lowest bits and the matching colors.
    BasisIndexing idx = g.indexing();
    Permutation p = direction_perm_to_automorphism(g, parse_cycles("(1,2)", 3));
    EXPECT_EQ(p[idx.index(0b001, 1)], idx.index(0b010, 2));
    EXPECT_EQ(p[idx.index(0b110, 3)], idx.index(0b101, 3));
}

TEST(Automorphism, CayleyThreeCycle) {
    CayleyGraph cg = named_cayley("s3:3gen");
    Permutation p = direction_perm_to_automorphism(cg.graph, parse_cycles("(1,2,3)", 3));
    EXPECT_TRUE(is_automorphism(cg.graph, p));
    EXPECT_EQ(closure({p}, (int)p.size()).elements.size(), 3u);
    Permutation id = direction_perm_to_automorphism(cg.graph, parse_cycles("", 3));
    EXPECT_EQ(id, identity_perm((int)id.size()));
}

TEST(Automorphism, DistortedHypercubeHasNoDirectionSwap) {
    ColoredGraph g = build_distorted_hypercube(3);
    EXPECT_THROW(direction_perm_to_automorphism(g, parse_cycles("(1,2)", 3)), std::invalid_argument);
}

TEST(Automorphism, SquareVertexMaps) {
    ColoredGraph g = build_hypercube(2);
    // Flipping the low bit at every vertex keeps all colors.
    EXPECT_TRUE(is_automorphism(g, vertex_perm_to_basis(g, {1, 0, 3, 2})));
    // Reflecting across the diagonal needs the two directions swapped too.
    EXPECT_FALSE(is_automorphism(g, vertex_perm_to_basis(g, {0, 2, 1, 3})));
    EXPECT_TRUE(is_automorphism(g, direction_perm_to_automorphism(g, {1, 0})));
}

TEST(Automorphism, LeftTranslationsActOnVerticesOnly) {
    CayleyGraph cg = named_cayley("s3:2gen");
    BasisIndexing idx = cg.graph.indexing();
    for (int e = 0; e < 6; e++) {
        Permutation p = left_translation(cg, e);
        EXPECT_TRUE(is_automorphism(cg.graph, p));
        for (int v = 0; v < 6; v++) {
            int w = idx.vertex_of(p[idx.index(v, 1)]);
            for (int c = 1; c <= 2; c++) {
                EXPECT_EQ(p[idx.index(v, c)], idx.index(w, c));
            }
            EXPECT_EQ(cg.elements[w], compose_points(cg.elements[e], cg.elements[v]));
        }
    }
}

TEST(Automorphism, ColorPreservingMapsAreLeftTranslations) {
    // Exhaustive over all vertex permutations, so small groups only.
    for (const char *name : {"s3:2gen", "s3:3gen"}) {
        CayleyGraph cg = named_cayley(name);
        int N = cg.graph.num_vertices();
        std::set<Permutation> translations;
        for (int e = 0; e < N; e++) {
            translations.insert(left_translation(cg, e));
        }
        std::vector<int> image(N);
        for (int v = 0; v < N; v++) {
            image[v] = v;
        }
        std::set<Permutation> found;
        do {
            Permutation p = vertex_perm_to_basis(cg.graph, image);
            if (is_automorphism(cg.graph, p)) {
                found.insert(p);
            }
        } while (std::next_permutation(image.begin(), image.end()));
        EXPECT_EQ(found, translations) << name;
    }
}

TEST(Closure, OrdersAndLimit) {
    CayleyGraph cg = named_cayley("s4:3gen");
    std::vector<Permutation> left;
    for (int c = 1; c <= 3; c++) {
        left.push_back(left_translation(cg, cg.vertex_of_word({c})));
    }
    PermGroup grp = closure(left, 72);
    EXPECT_EQ(grp.elements.size(), 24u);
    EXPECT_EQ(grp.elements[0], identity_perm(72));
    EXPECT_THROW(closure(left, 72, 10), std::length_error);
    EXPECT_EQ(closure({}, 5).elements.size(), 1u);
}

TEST(Orbits, ExampleCayleyS3) {
    CayleyGraph cg = named_cayley("s3:2gen");
    Permutation a = direction_perm_to_automorphism(cg.graph, {1, 0});
    auto orbs = orbits({a}, 12);
    ASSERT_EQ(orbs.size(), 6u);
    BasisIndexing idx = cg.graph.indexing();
    int t1 = cg.vertex_of_word({1}), t2 = cg.vertex_of_word({2});
    std::vector<int> expect{idx.index(t1, 1), idx.index(t2, 2)};
    std::sort(expect.begin(), expect.end());
    EXPECT_NE(std::find(orbs.begin(), orbs.end(), expect), orbs.end());
    for (const auto &o : orbs) {
        EXPECT_EQ(o.size(), 2u);
    }
}

TEST(Orbits, HypercubeAllDirections) {
    ColoredGraph g = build_hypercube(3);
    std::vector<Permutation> gens{direction_perm_to_automorphism(g, parse_cycles("(1,2)", 3)),
                                  direction_perm_to_automorphism(g, parse_cycles("(1,2,3)", 3))};
    std::vector<size_t> sizes;
    for (const auto &o : orbits(gens, 24)) {
        sizes.push_back(o.size());
    }
    EXPECT_EQ(sizes, (std::vector<size_t>{3, 3, 6, 6, 3, 3}));
}

TEST(Orbits, PartitionMatchesBruteForce) {
    std::vector<std::pair<ColoredGraph, std::vector<std::string>>> cases{
        {build_hypercube(3), {"(2,3)"}},
        {build_hypercube(4), {"(2,3,4)", "(2,3)"}},
        {named_cayley("s4:3gen").graph, {"(1,2)", "(2,3)"}},
        {named_cayley("s3:3gen").graph, {"(1,2,3)"}},
    };
    for (const auto &[g, cycles] : cases) {
        int d = g.regular_degree().value();
        std::vector<Permutation> gens;
        for (const auto &c : cycles) {
            gens.push_back(direction_perm_to_automorphism(g, parse_cycles(c, d)));
        }
        PermGroup grp = closure(gens, (int)gens[0].size());
        auto orbs = orbits(grp);
        EXPECT_EQ(orbs, brute_orbits(grp));
        EXPECT_EQ(orbs, orbits(gens, grp.degree));
        size_t total = 0;
        for (size_t i = 0; i < orbs.size(); i++) {
            total += orbs[i].size();
            EXPECT_TRUE(std::is_sorted(orbs[i].begin(), orbs[i].end()));
            EXPECT_EQ(grp.elements.size() % orbs[i].size(), 0u);
            if (i > 0) {
                EXPECT_LT(orbs[i - 1][0], orbs[i][0]);
            }
        }
        EXPECT_EQ(total, (size_t)grp.degree);
    }
}
