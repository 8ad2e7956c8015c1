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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/decoherence.h"
#include "qwalk/hitting.h"
#include "qwalk/quotient.h"
#include "qwalk/spectral.h"

#ifndef QWALK_VERSION
#define QWALK_VERSION "unknown"
#endif

namespace qwalk::cli {

using json = nlohmann::ordered_json;

uint64_t fnv1a64(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

// Bad user input. Maps to exit code 1.
struct ArgError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string num(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json cplx_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

json matrix_json(const Mat &m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (int j = 0; j < m.cols(); j++) {
            row.push_back(cplx_json(m(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int to_int(const std::string &s, const std::string &what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw ArgError("bad " + what + ": '" + s + "'");
    }
}

double to_double(const std::string &s, const std::string &what) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw ArgError("bad " + what + ": '" + s + "'");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Complex vector or matrix entries: either a number or a [re, im] pair.
cplx parse_entry(const json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ArgError("entries must be numbers or [re, im] pairs");
}

Mat load_matrix(const std::string &path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception &e) {
        throw ArgError(path + ": " + e.what());
    }
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ArgError(path + ": expected a list of rows");
    }
    Mat m(j.size(), j[0].size());
    for (size_t i = 0; i < j.size(); i++) {
        if (!j[i].is_array() || j[i].size() != j[0].size()) {
            throw ArgError(path + ": ragged matrix");
        }
        for (size_t k = 0; k < j[i].size(); k++) {
            m(i, k) = parse_entry(j[i][k]);
        }
    }
    return m;
}

Vec load_vector(const std::string &path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception &e) {
        throw ArgError(path + ": " + e.what());
    }
    if (!j.is_array() || j.empty()) {
        throw ArgError(path + ": expected a list of amplitudes");
    }
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); i++) {
        v(i) = parse_entry(j[i]);
    }
    return v;
}

// ---- shared walk options ---------------------------------------------------------------------------------

struct WalkOptions {
    std::string graph = "hypercube:3";
    std::string graph_file;
    std::string walk = "coined";
    std::string coin = "grover";
    std::string coin_file;
    double gamma = 1.0;
    double dt = 1.0;
    std::string convention = "default";
    std::string start = "symmetric";
    std::string final_ = "all-ones";
};

void add_walk_options(CLI::App *app, WalkOptions &o, bool with_start_final) {
    app->add_option("--graph", o.graph,
                    "hypercube:n, cycle:n, edge, cayley:s3:2gen, cayley:s3:3gen, cayley:s4:3gen, gluedtrees:n, "
                    "distorted-hypercube:n")
        ->capture_default_str();
    app->add_option("--graph-file", o.graph_file, "graph JSON file (overrides --graph)");
    app->add_option("--walk", o.walk, "coined or continuous")
        ->check(CLI::IsMember({"coined", "continuous"}))
        ->capture_default_str();
    app->add_option("--coin", o.coin, "grover or dft")->check(CLI::IsMember({"grover", "dft"}))->capture_default_str();
    app->add_option("--coin-file", o.coin_file, "coin matrix JSON (rows of numbers or [re, im])");
    app->add_option("--gamma", o.gamma, "continuous walk hopping rate")->capture_default_str();
    app->add_option("--dt", o.dt, "continuous walk time between measurements")->capture_default_str();
    app->add_option("--convention", o.convention, "Hamiltonian: default, laplacian or adjacency")
        ->check(CLI::IsMember({"default", "laplacian", "adjacency"}))
        ->capture_default_str();
    if (with_start_final) {
        app->add_option("--start", o.start, "symmetric, symmetric:v, basis:v:c or file:PATH")->capture_default_str();
        app->add_option("--final", o.final_, "all-ones, last, v1,v2,... or word:1,2,1;2,1,2")->capture_default_str();
    }
}

struct Walk {
    std::string graph_desc;
    ColoredGraph graph;
    std::optional<CayleyGraph> cayley;
    int cube_n = 0;  // set for hypercube and distorted hypercube shorthands
    bool continuous = false;
    BasisIndexing idx;
    Mat U;
    int coin_dim = 1;
    std::string coin_desc;
};

int shorthand_size(const std::string &spec, const std::string &prefix) {
    return to_int(spec.substr(prefix.size()), "graph size in '" + spec + "'");
}

void load_graph(const WalkOptions &o, Walk &w) {
    if (!o.graph_file.empty()) {
        try {
            w.graph = graph_from_json(read_file(o.graph_file));
        } catch (const ArgError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw ArgError(o.graph_file + ": " + e.what());
        }
        w.graph_desc = "file:" + o.graph_file;
        return;
    }
    const std::string &s = o.graph;
    w.graph_desc = s;
    try {
        if (s.rfind("hypercube:", 0) == 0) {
            w.cube_n = shorthand_size(s, "hypercube:");
            w.graph = build_hypercube(w.cube_n);
        } else if (s.rfind("distorted-hypercube:", 0) == 0) {
            w.cube_n = shorthand_size(s, "distorted-hypercube:");
            w.graph = build_distorted_hypercube(w.cube_n);
        } else if (s.rfind("cycle:", 0) == 0) {
            w.graph = build_cycle(shorthand_size(s, "cycle:"));
        } else if (s.rfind("gluedtrees:", 0) == 0) {
            w.graph = build_glued_trees(shorthand_size(s, "gluedtrees:"));
        } else if (s == "edge") {
            w.graph = build_edge();
        } else if (s.rfind("cayley:", 0) == 0) {
            w.cayley = named_cayley(s.substr(7));
            w.graph = w.cayley->graph;
        } else {
            throw ArgError("unknown graph '" + s + "'");
        }
    } catch (const ArgError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ArgError(e.what());
    }
}

BasisIndexing vertex_indexing(int N) {
    BasisIndexing idx;
    idx.offsets.resize(N + 1);
    idx.colors.assign(N, {1});
    for (int v = 0; v <= N; v++) {
        idx.offsets[v] = v;
    }
    idx.total_dim = N;
    return idx;
}

Walk build_walk(const WalkOptions &o) {
    Walk w;
    load_graph(o, w);
    w.continuous = o.walk == "continuous";
    if (w.continuous) {
        auto conv = o.convention == "laplacian"   ? HamiltonianConvention::Laplacian
                    : o.convention == "adjacency" ? HamiltonianConvention::Adjacency
                                                  : HamiltonianConvention::Default;
        RMat H = continuous_hamiltonian(w.graph, o.gamma, conv);
        w.U = continuous_propagator(H, o.dt).matrix;
        w.idx = vertex_indexing(w.graph.num_vertices());
        w.coin_dim = 1;
        w.coin_desc = "continuous:" + o.convention + ":gamma=" + num(o.gamma) + ":dt=" + num(o.dt);
        return w;
    }
    auto d = w.graph.regular_degree();
    if (!d || !w.graph.consistently_colored()) {
        throw ArgError("coined walk needs a consistently colored regular graph; try --walk continuous");
    }
    Coin c;
    if (!o.coin_file.empty()) {
        try {
            c = custom_coin(load_matrix(o.coin_file));
        } catch (const ArgError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
        w.coin_desc = "file:" + o.coin_file;
    } else {
        c = o.coin == "dft" ? dft_coin(*d) : grover_coin(*d);
        w.coin_desc = o.coin;
    }
    try {
        w.U = evolution_operator(w.graph, c).matrix;
    } catch (const std::invalid_argument &e) {
        throw ArgError(e.what());
    }
    w.idx = w.graph.indexing();
    w.coin_dim = *d;
    return w;
}

int check_vertex(const Walk &w, int v) {
    if (v < 0 || v >= w.graph.num_vertices()) {
        throw ArgError("vertex " + std::to_string(v) + " out of range");
    }
    return v;
}

Vec parse_start(const std::string &s, const Walk &w) {
    if (s == "symmetric") {
        return symmetric_state(w.idx, 0);
    }
    if (s.rfind("symmetric:", 0) == 0) {
        return symmetric_state(w.idx, check_vertex(w, to_int(s.substr(10), "start vertex")));
    }
    if (s.rfind("basis:", 0) == 0) {
        auto parts = split(s.substr(6), ':');
        int v = check_vertex(w, to_int(parts[0], "start vertex"));
        int c = parts.size() > 1 ? to_int(parts[1], "start color") : 1;
        if (parts.size() > 2) {
            throw ArgError("basis start is basis:v:c");
        }
        try {
            return basis_state(w.idx, v, c);
        } catch (const std::exception &e) {
            throw ArgError(e.what());
        }
    }
    if (s.rfind("file:", 0) == 0) {
        Vec v = load_vector(s.substr(5));
        if (v.size() != w.U.rows()) {
            throw ArgError("start vector has length " + std::to_string(v.size()) + ", walk dimension is " +
                           std::to_string(w.U.rows()));
        }
        if (std::abs(v.norm() - 1.0) > 1e-10) {
            throw ArgError("start vector is not normalized");
        }
        return v;
    }
    throw ArgError("unknown start '" + s + "'");
}

std::vector<int> parse_final(const std::string &s, const Walk &w) {
    if (s == "all-ones") {
        if (w.cube_n == 0) {
            throw ArgError("--final all-ones needs a hypercube graph");
        }
        return {(1 << w.cube_n) - 1};
    }
    if (s == "last") {
        return {w.graph.num_vertices() - 1};
    }
    if (s.rfind("word:", 0) == 0) {
        if (!w.cayley) {
            throw ArgError("--final word: needs a Cayley graph");
        }
        std::vector<int> out;
        for (const auto &word : split(s.substr(5), ';')) {
            std::vector<int> colors;
            for (const auto &c : split(word, ',')) {
                if (!c.empty()) {
                    colors.push_back(to_int(c, "color in word"));
                }
            }
            try {
                out.push_back(w.cayley->vertex_of_word(colors));
            } catch (const std::exception &e) {
                throw ArgError(e.what());
            }
        }
        return out;
    }
    std::vector<int> out;
    for (const auto &part : split(s, ',')) {
        out.push_back(check_vertex(w, to_int(part, "final vertex")));
    }
    return out;
}

std::vector<Permutation> parse_subgroup(const std::string &text, const Walk &w) {
    if (w.continuous) {
        throw ArgError("--subgroup lifts direction permutations and needs a coined walk");
    }
    std::vector<Permutation> gens;
    for (const auto &part : split(text, ';')) {
        if (part.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        try {
            gens.push_back(direction_perm_to_automorphism(w.graph, parse_cycles(part, w.coin_dim)));
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
    }
    return gens;
}

json walk_manifest(const std::string &command, const WalkOptions &o, const Walk &w) {
    json m;
    m["tool"] = "qwalk";
    m["version"] = QWALK_VERSION;
    m["command"] = command;
    m["graph"] = w.graph_desc;
    m["walk"] = o.walk;
    m["coin"] = w.coin_desc;
    return m;
}

std::string manifest_line(const json &m) {
    std::string body = m.dump();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)fnv1a64(body));
    return std::string("# manifest fnv1a64=") + hex + " " + body;
}

json with_hash(json m) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)fnv1a64(m.dump()));
    json out;
    out["manifest"] = m;
    out["manifest_hash"] = std::string("fnv1a64=") + hex;
    return out;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

void csv_row(std::ostream &out, const std::vector<std::string> &fields) {
    for (size_t i = 0; i < fields.size(); i++) {
        out << (i ? "," : "") << csv_field(fields[i]);
    }
    out << "\n";
}

ClosedFormBackend parse_backend(const std::string &s) {
    if (s == "dense") {
        return ClosedFormBackend::Dense;
    }
    if (s == "schur") {
        return ClosedFormBackend::Schur;
    }
    return ClosedFormBackend::Auto;
}

// ---- hitting ----------------------------------------------------------------------------------------------

struct HittingOptions {
    std::string method = "auto";
    std::string backend = "auto";
    double epsilon = 1e-8;
    int64_t step_cap = 1000000;
    bool timing = false;
};

HittingResult compute_hitting(const MeasuredWalkSpec &spec, const HittingOptions &h) {
    ClosedFormOptions cf;
    cf.backend = parse_backend(h.backend);
    SeriesOptions so;
    so.step_cap = h.step_cap;
    bool closed = h.method == "closed-form" || (h.method == "auto" && spec.dim() <= cf.max_dim);
    return closed ? hitting_time_closed_form(spec, cf) : hitting_time_series(spec, h.epsilon, so);
}

int cmd_hitting(const WalkOptions &o, const HittingOptions &h, std::ostream &out) {
    Walk w = build_walk(o);
    Vec psi = parse_start(o.start, w);
    std::vector<int> finals = parse_final(o.final_, w);
    auto spec = MeasuredWalkSpec::pure(w.U, final_vertex_mask(w.idx, finals), psi);
    auto t0 = std::chrono::steady_clock::now();
    HittingResult r = compute_hitting(spec, h);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json m = walk_manifest("hitting", o, w);
    m["start"] = o.start;
    m["final"] = o.final_;
    m["method"] = h.method;
    m["backend"] = h.backend;
    m["epsilon"] = h.epsilon;
    m["step_cap"] = h.step_cap;
    std::vector<std::string> header{"graph", "coin", "start", "final", "kind", "tau", "method", "escape"};
    std::vector<std::string> row{w.graph_desc, w.coin_desc, o.start, o.final_, to_string(r.kind),
                                 num(r.value), to_string(r.method), num(r.escape)};
    if (h.timing) {
        header.push_back("runtime_s");
        row.push_back(num(secs));
    }
    csv_row(out, header);
    csv_row(out, row);
    out << manifest_line(m) << "\n";
    return kOk;
}

// ---- sweep-decoherence ------------------------------------------------------------------------------------

std::vector<double> parse_grid(const std::string &s) {
    std::vector<double> grid;
    if (s.find(':') != std::string::npos) {
        auto parts = split(s, ':');
        if (parts.size() != 3) {
            throw ArgError("grid is start:step:stop or a comma list");
        }
        double a = to_double(parts[0], "grid start"), st = to_double(parts[1], "grid step"),
               b = to_double(parts[2], "grid stop");
        if (!(st > 0) || b < a) {
            throw ArgError("grid needs step > 0 and stop >= start");
        }
        int64_t count = (int64_t)std::floor((b - a) / st + 1e-9) + 1;
        if (count > 100000) {
            throw ArgError("grid too large");
        }
        for (int64_t k = 0; k < count; k++) {
            grid.push_back(std::min(b, a + k * st));
        }
    } else {
        for (const auto &p : split(s, ',')) {
            grid.push_back(to_double(p, "grid point"));
        }
    }
    for (double p : grid) {
        if (!(p >= 0 && p <= 1)) {
            throw ArgError("dephasing strength must lie in [0, 1]");
        }
    }
    return grid;
}

struct SweepOptions {
    std::string kinds = "both,coin,position";
    std::string grid = "0:0.1:1";
    std::string method = "closed-form";
    double epsilon = 1e-8;
    int threads = 0;
};

int cmd_sweep(const WalkOptions &o, const SweepOptions &so, std::ostream &out) {
    Walk w = build_walk(o);
    Vec psi = parse_start(o.start, w);
    auto spec = MeasuredWalkSpec::pure(w.U, final_vertex_mask(w.idx, parse_final(o.final_, w)), psi);
    std::vector<DephasingKind> kinds;
    for (const auto &k : split(so.kinds, ',')) {
        try {
            kinds.push_back(parse_dephasing_kind(k));
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
    }
    std::vector<double> grid = parse_grid(so.grid);
    struct Point {
        DephasingKind kind;
        double p;
        HittingResult r;
        std::string error;
        bool indeterminate = false;
    };
    std::vector<Point> points;
    for (auto k : kinds) {
        for (double p : grid) {
            points.push_back({k, p, {}, {}});
        }
    }
    int N = w.graph.num_vertices();
    int threads = so.threads > 0 ? so.threads : (int)std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, (int)points.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < points.size(); i = next++) {
            Point &pt = points[i];
            try {
                Channel ch = dephasing_channel(pt.kind, pt.p, N, w.coin_dim);
                pt.r = so.method == "series" ? decohered_hitting_time_series(spec, ch, so.epsilon)
                                             : decohered_hitting_time(spec, ch);
            } catch (const IndeterminateError &e) {
                pt.error = e.what();
                pt.indeterminate = true;
            } catch (const std::exception &e) {
                pt.error = e.what();
            }
        }
    };
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < threads; t++) {
        jobs.push_back(std::async(std::launch::async, worker));
    }
    for (auto &j : jobs) {
        j.get();
    }
    for (const auto &pt : points) {
        if (!pt.error.empty()) {
            if (pt.indeterminate) {
                throw IndeterminateError(pt.error);
            }
            throw ArgError(pt.error);
        }
    }

    json m = walk_manifest("sweep-decoherence", o, w);
    m["start"] = o.start;
    m["final"] = o.final_;
    m["kinds"] = so.kinds;
    m["grid"] = so.grid;
    m["method"] = so.method;
    m["epsilon"] = so.epsilon;
    csv_row(out, {"graph", "coin", "dephasing", "p", "kind", "tau", "method", "escape"});
    for (const auto &pt : points) {
        csv_row(out, {w.graph_desc, w.coin_desc, to_string(pt.kind), num(pt.p), to_string(pt.r.kind), num(pt.r.value),
                      to_string(pt.r.method), num(pt.r.escape)});
    }
    out << manifest_line(m) << "\n";
    return kOk;
}

// ---- spectrum ---------------------------------------------------------------------------------------------

struct SpectrumOptions {
    int vertex = 0;
    double tol = 1e-8;
    bool with_start = false;
};

int cmd_spectrum(const WalkOptions &o, const SpectrumOptions &so, std::ostream &out) {
    Walk w = build_walk(o);
    BasisMask mask = final_vertex_mask(w.idx, parse_final(o.final_, w));
    auto clusters = eigenspace_clusters(w.U, so.tol);
    SpectralReport r = infinite_hitting_projector(clusters, mask);
    json m = walk_manifest("spectrum", o, w);
    m["final"] = o.final_;
    m["cluster_tol"] = so.tol;
    m["vertex"] = so.vertex;
    if (so.with_start) {
        m["start"] = o.start;
    }
    json j = with_hash(m);
    j["dimension"] = w.U.rows();
    j["trace_P"] = r.trace_P;
    j["trace_P_int"] = r.trace_P_int;
    json cl = json::array();
    for (size_t k = 0; k < clusters.size(); k++) {
        json c;
        c["phase"] = std::arg(clusters[k].eigenvalue);
        c["eigenvalue"] = cplx_json(clusters[k].eigenvalue);
        c["multiplicity"] = clusters[k].multiplicity;
        c["avoiding_dim"] = r.contribution_dims[k];
        cl.push_back(c);
    }
    j["clusters"] = cl;
    if (!w.continuous) {
        j["degeneracy_verdict"] = degeneracy_condition(clusters, w.coin_dim) == DegeneracyVerdict::SufficientForInfinite
                                      ? "sufficient_for_infinite"
                                      : "inconclusive";
    }
    CoinOverlapMatrix cv = coin_overlap_matrix(r, w.idx, check_vertex(w, so.vertex));
    json co;
    co["vertex"] = so.vertex;
    co["eigenvalues"] = std::vector<double>(cv.eigenvalues.data(), cv.eigenvalues.data() + cv.eigenvalues.size());
    co["zero_count"] = cv.zero_count();
    j["coin_overlap"] = co;
    if (so.with_start) {
        j["escape"] = escape_probability(r, parse_start(o.start, w));
    }
    j["warnings"] = r.warnings;
    out << j.dump(2) << "\n";
    return kOk;
}

// ---- quotient ---------------------------------------------------------------------------------------------

struct QuotientOptions {
    std::string subgroup;
    bool with_final = false;
};

int cmd_quotient(const WalkOptions &o, const QuotientOptions &qo, std::ostream &out) {
    Walk w = build_walk(o);
    json m = walk_manifest("quotient", o, w);
    if (w.continuous) {
        if (o.graph.rfind("gluedtrees:", 0) != 0 || !o.graph_file.empty()) {
            throw ArgError("continuous quotients are available for gluedtrees:n (column orbits)");
        }
        int n = shorthand_size(o.graph, "gluedtrees:");
        RMat H = continuous_hamiltonian(w.graph, o.gamma, HamiltonianConvention::Laplacian);
        RMat B = glued_trees_column_isometry(n);
        RMat Hq = glued_trees_quotient_hamiltonian(n, o.gamma);
        m["orbits"] = "columns";
        json j = with_hash(m);
        j["orbit_count"] = 2 * n + 1;
        j["H_quotient"] = matrix_json(Hq.cast<cplx>());
        j["projection_error"] = max_abs(B.transpose() * H * B - Hq);
        out << j.dump(2) << "\n";
        return kOk;
    }
    std::vector<Permutation> gens = parse_subgroup(qo.subgroup, w);
    OrbitBasis ob = orbit_basis(gens, (int)w.U.rows());
    SymmetryCheck sym = check_walk_symmetry(w.U, gens);
    if (!sym.ok) {
        throw ArgError("walk does not commute with the subgroup (residual " + num(sym.residual) + ")");
    }
    Mat UH = quotient_walk(w.U, ob);
    QuotientShift qs = quotient_shift_and_graph(shift_matrix(w.graph), ob, w.idx);
    QuotientCoin qc = quotient_coin(UH, qs.S_H, qs.graph);
    m["subgroup"] = qo.subgroup;
    if (qo.with_final) {
        m["final"] = o.final_;
    }
    json j = with_hash(m);
    json orbs = json::array();
    for (const auto &orb : ob.orbits) {
        json members = json::array();
        for (int i : orb) {
            members.push_back(json::array({w.idx.vertex_of(i), w.idx.color_of(i)}));
        }
        orbs.push_back(members);
    }
    j["orbit_count"] = ob.dim();
    j["orbits"] = orbs;
    j["U_H"] = matrix_json(UH);
    j["S_H"] = matrix_json(qs.S_H);
    json blocks = json::array();
    for (const auto &b : qc.blocks) {
        blocks.push_back(matrix_json(b));
    }
    j["coin_blocks"] = blocks;
    j["quotient_graph"] = json::parse(graph_to_json(qs.graph.graph));
    j["quotient_vertex_sets"] = qs.graph.vertex_sets;
    if (qo.with_final) {
        QuotientHittingVerdict v =
            quotient_infinite_hitting(w.U, ob, final_vertex_mask(w.idx, parse_final(o.final_, w)));
        json jv;
        jv["trace_P_full"] = v.trace_P_full;
        jv["intersection_dim"] = v.intersection_dim;
        jv["intersection_dim_quotient"] = v.intersection_dim_quotient;
        jv["paths_agree"] = v.paths_agree;
        j["verdict"] = jv;
    }
    out << j.dump(2) << "\n";
    return kOk;
}

// ---- dfs --------------------------------------------------------------------------------------------------

struct DfsOptions {
    std::string subgroup;
    std::string channel = "swap";
    std::string kappas;
    std::string kind = "both";
    double p = 0.5;
};

int cmd_dfs(const WalkOptions &o, const DfsOptions &d, std::ostream &out) {
    Walk w = build_walk(o);
    std::string sub = d.subgroup;
    if (sub.empty()) {
        if (w.coin_dim < 2) {
            throw ArgError("--subgroup is required here");
        }
        std::string cyc = "(";
        for (int i = 1; i <= w.coin_dim; i++) {
            cyc += std::to_string(i) + (i < w.coin_dim ? "," : ")");
        }
        sub = "(1,2);" + cyc;
    }
    OrbitBasis ob = orbit_basis(parse_subgroup(sub, w), (int)w.U.rows());
    json m = walk_manifest("dfs", o, w);
    m["subgroup"] = sub;
    m["channel"] = d.channel;
    DfsVerdict v;
    if (d.channel == "dephasing") {
        m["kind"] = d.kind;
        m["p"] = d.p;
        DephasingKind k;
        try {
            k = parse_dephasing_kind(d.kind);
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
        if (!(d.p >= 0 && d.p <= 1)) {
            throw ArgError("--p must lie in [0, 1]");
        }
        v = dfs_check_kraus(dephasing_channel(k, d.p, w.graph.num_vertices(), w.coin_dim), ob.B);
    } else {
        if (w.cube_n < 2 || o.graph.rfind("hypercube:", 0) != 0) {
            throw ArgError("swap channels are defined on hypercube:n with n >= 2");
        }
        std::vector<cplx> kap;
        if (d.kappas.empty()) {
            kap.assign(w.cube_n - 1, 1.0 / std::sqrt(w.cube_n - 1.0));
        } else {
            for (const auto &s : split(d.kappas, ',')) {
                kap.push_back(to_double(s, "kappa"));
            }
        }
        m["kappas"] = d.kappas.empty() ? std::string("uniform") : d.kappas;
        try {
            v = d.channel == "swap-lindblad" ? dfs_check_lindblad(swap_lindblad_example(w.cube_n, kap), ob.B)
                                             : dfs_check_kraus(swap_dephasing_example(w.cube_n, kap), ob.B);
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
    }
    json j = with_hash(m);
    j["orbit_count"] = ob.dim();
    j["is_dfs"] = v.is_dfs;
    j["residual"] = v.residual;
    if (v.is_dfs) {
        json c = json::array();
        for (cplx z : v.coefficients) {
            c.push_back(cplx_json(z));
        }
        j["coefficients"] = c;
    } else {
        j["witness_operator"] = v.witness_op;
        j["witness_vector"] = v.witness_vector;
    }
    out << j.dump(2) << "\n";
    return kOk;
}

// ---- classical --------------------------------------------------------------------------------------------

struct ClassicalOptions {
    int hypercube = 0;
    int64_t trials = 0;
    uint64_t seed = 1;
    int from = 0;
    int to = -1;
};

int cmd_classical(const WalkOptions &o, const ClassicalOptions &c, bool graph_given, std::ostream &out) {
    ColoredGraph g;
    std::string desc;
    int n = c.hypercube;
    if (n > 0) {
        if (n > 30) {
            throw ArgError("--hypercube is limited to 30");
        }
        desc = "hypercube:" + std::to_string(n);
    } else if (graph_given || !o.graph_file.empty()) {
        Walk w;
        load_graph(o, w);
        g = w.graph;
        desc = w.graph_desc;
        n = w.cube_n && o.graph.rfind("hypercube:", 0) == 0 ? w.cube_n : 0;
    } else {
        throw ArgError("give --hypercube n or --graph");
    }
    bool cube = n > 0;
    if (cube && g.num_vertices() == 0 && c.trials > 0) {
        if (n > 20) {
            throw ArgError("Monte Carlo on the hypercube is limited to n <= 20");
        }
        g = build_hypercube(n);
    }
    int from = c.from, to = c.to;
    if (to < 0) {
        to = cube ? (1 << n) - 1 : g.num_vertices() - 1;
    }
    if (cube && (from != 0 || to != (1 << n) - 1) && c.hypercube > 0) {
        throw ArgError("the recursion covers 0 -> 1...1 only");
    }
    json m;
    m["tool"] = "qwalk";
    m["version"] = QWALK_VERSION;
    m["command"] = "classical";
    m["graph"] = desc;
    m["from"] = from;
    m["to"] = to;
    m["trials"] = c.trials;
    m["seed"] = c.seed;
    std::string rec, sum, mean, se;
    if (cube && from == 0 && to == (1 << n) - 1) {
        rec = num(classical_hypercube_hitting(n));
        sum = num(classical_hypercube_hitting_sum(n));
    }
    if (c.trials > 0) {
        if (from < 0 || from >= g.num_vertices() || to >= g.num_vertices()) {
            throw ArgError("vertex out of range");
        }
        MonteCarloResult r;
        try {
            r = classical_hitting_monte_carlo(g, from, to, c.trials, c.seed);
        } catch (const std::invalid_argument &e) {
            throw ArgError(e.what());
        }
        mean = num(r.mean);
        se = num(r.stderr_);
    }
    csv_row(out, {"graph", "from", "to", "recursion", "closed_sum", "mc_mean", "mc_stderr", "trials", "seed"});
    csv_row(out, {desc, std::to_string(from), std::to_string(to), rec, sum, mean, se, std::to_string(c.trials),
                  std::to_string(c.seed)});
    out << manifest_line(m) << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coined and continuous quantum walks: hitting times, spectra, quotients, decoherence."};
    app.name("qwalk");
    app.set_version_flag("--version", QWALK_VERSION);
    app.require_subcommand(1);

    WalkOptions wo;
    HittingOptions ho;
    SweepOptions so;
    SpectrumOptions spo;
    QuotientOptions qo;
    DfsOptions dfo;
    ClassicalOptions co;

    auto *hit = app.add_subcommand("hitting", "expected hitting time of the measured walk");
    add_walk_options(hit, wo, true);
    hit->add_option("--method", ho.method, "auto, closed-form or series")
        ->check(CLI::IsMember({"auto", "closed-form", "series"}))
        ->capture_default_str();
    hit->add_option("--backend", ho.backend, "closed form backend: auto, dense or schur")
        ->check(CLI::IsMember({"auto", "dense", "schur"}))
        ->capture_default_str();
    hit->add_option("--epsilon", ho.epsilon, "series truncation mass")->capture_default_str();
    hit->add_option("--step-cap", ho.step_cap, "series step cap")->capture_default_str();
    hit->add_flag("--timing", ho.timing, "append a runtime column (breaks byte determinism)");

    auto *sweep = app.add_subcommand("sweep-decoherence", "hitting time across a dephasing grid");
    add_walk_options(sweep, wo, true);
    sweep->add_option("--kinds", so.kinds, "comma list of both, coin, position")->capture_default_str();
    sweep->add_option("--p-grid", so.grid, "start:step:stop or comma list")->capture_default_str();
    sweep->add_option("--method", so.method, "closed-form or series")
        ->check(CLI::IsMember({"closed-form", "series"}))
        ->capture_default_str();
    sweep->add_option("--epsilon", so.epsilon, "series truncation mass")->capture_default_str();
    sweep->add_option("--threads", so.threads, "worker threads (0 = hardware)")->capture_default_str();

    auto *spec = app.add_subcommand("spectrum", "eigenspace clusters, infinite-hitting projector, coin overlap");
    add_walk_options(spec, wo, true);
    spec->add_option("--vertex", spo.vertex, "vertex for the coin-overlap matrix")->capture_default_str();
    spec->add_option("--cluster-tol", spo.tol, "eigenvalue clustering tolerance")->capture_default_str();
    spec->add_flag("--escape", spo.with_start, "report the escape probability of --start");

    auto *quot = app.add_subcommand("quotient", "orbit basis and quotient walk under a direction subgroup");
    add_walk_options(quot, wo, true);
    quot->add_option("--subgroup", qo.subgroup, "generators in cycle notation separated by ';'");
    quot->add_flag("--verdict", qo.with_final, "decide infinite hitting inside the quotient for --final");

    auto *dfs = app.add_subcommand("dfs", "decoherence-free subspace check on an orbit basis");
    add_walk_options(dfs, wo, false);
    dfs->add_option("--subgroup", dfo.subgroup, "generators; default is every direction permutation");
    dfs->add_option("--channel", dfo.channel, "swap, swap-lindblad or dephasing")
        ->check(CLI::IsMember({"swap", "swap-lindblad", "dephasing"}))
        ->capture_default_str();
    dfs->add_option("--kappas", dfo.kappas, "comma list of swap amplitudes (default uniform)");
    dfs->add_option("--kind", dfo.kind, "dephasing kind")->capture_default_str();
    dfs->add_option("--p", dfo.p, "dephasing strength")->capture_default_str();

    auto *cls = app.add_subcommand("classical", "classical random walk baseline");
    auto *graph_opt = cls->add_option("--graph", wo.graph, "graph shorthand for Monte Carlo");
    cls->add_option("--graph-file", wo.graph_file, "graph JSON file");
    cls->add_option("--hypercube", co.hypercube, "hypercube dimension");
    cls->add_option("--mc-trials", co.trials, "Monte Carlo trials (0 = none)")->capture_default_str();
    cls->add_option("--seed", co.seed, "Monte Carlo seed")->capture_default_str();
    cls->add_option("--from", co.from, "start vertex")->capture_default_str();
    cls->add_option("--to", co.to, "target vertex (default last)");

    std::vector<const char *> argv{"qwalk"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (*hit) {
            return cmd_hitting(wo, ho, out);
        }
        if (*sweep) {
            return cmd_sweep(wo, so, out);
        }
        if (*spec) {
            return cmd_spectrum(wo, spo, out);
        }
        if (*quot) {
            if (qo.subgroup.empty() && wo.walk == "coined") {
                throw ArgError("--subgroup is required");
            }
            return cmd_quotient(wo, qo, out);
        }
        if (*dfs) {
            return cmd_dfs(wo, dfo, out);
        }
        if (*cls) {
            return cmd_classical(wo, co, graph_opt->count() > 0, out);
        }
    } catch (const ArgError &e) {
        err << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const IndeterminateError &e) {
        err << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const std::exception &e) {
        err << "failed: " << e.what() << "\n";
        return kIndeterminate;
    }
    return kBadArgs;
}

}  // namespace qwalk::cli
