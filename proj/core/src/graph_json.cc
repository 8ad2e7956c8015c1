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

#include "json.hpp"

#include "qwalk/graphs.h"

namespace qwalk {

std::string graph_to_json(const ColoredGraph &g) {
    nlohmann::json j;
    j["num_vertices"] = g.num_vertices();
    nlohmann::json edges = nlohmann::json::array();
    for (int v = 0; v < g.num_vertices(); v++) {
        for (const auto &[c, e] : g.edges_at(v)) {
            if (std::make_pair(v, c) > std::make_pair(e.to, e.to_color)) {
                continue;
            }
            nlohmann::json edge{{"u", v}, {"cu", c}, {"v", e.to}, {"cv", e.to_color}};
            if (e.to == v) {
                edge["self_loop"] = true;
            }
            edges.push_back(edge);
        }
    }
    j["edges"] = edges;
    if (!g.labels.empty()) {
        j["labels"] = g.labels;
    }
    return j.dump();
}

ColoredGraph graph_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("graph JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("num_vertices") || !j.contains("edges") || !j["edges"].is_array()) {
        throw std::invalid_argument("graph JSON needs num_vertices and an edges array");
    }
    try {
        ColoredGraph g(j["num_vertices"].get<int>());
        for (const auto &e : j["edges"]) {
            g.add_edge(e.at("u").get<int>(), e.at("cu").get<int>(), e.at("v").get<int>(), e.at("cv").get<int>());
        }
        if (j.contains("labels")) {
            g.labels = j["labels"].get<std::vector<std::string>>();
            if ((int)g.labels.size() != g.num_vertices()) {
                throw std::invalid_argument("graph JSON: label count does not match vertex count");
            }
        }
        g.validate();
        return g;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("graph JSON: ") + ex.what());
    }
}

}  // namespace qwalk
