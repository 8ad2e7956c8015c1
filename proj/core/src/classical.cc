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

#include <cmath>
#include <deque>
#include <future>
#include <random>
#include <thread>

#include "qwalk/hitting.h"

namespace qwalk {

double classical_hypercube_hitting(int n) {
    if (n < 1) {
        throw std::invalid_argument("hypercube dimension must be >= 1");
    }
    // Delta(x) = tau(x) - tau(x+1); from tau(x) = (n-x)/n tau(x+1) + x/n tau(x-1) + 1, tau(n) = 0.
    double delta = 1.0, total = 1.0;
    for (int x = 1; x < n; x++) {
        delta = (x * delta + n) / (double)(n - x);
        total += delta;
    }
    if (!std::isfinite(total)) {
        throw std::overflow_error("classical hitting time overflows a double");
    }
    return total;
}

double classical_hypercube_hitting_sum(int n) {
    if (n < 1) {
        throw std::invalid_argument("hypercube dimension must be >= 1");
    }
    auto binom = [](int a, int b) {
        return std::exp(std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0));
    };
    double total = 0.0;
    for (int x = 0; x < n; x++) {
        double num = 1.0;
        for (int j = 0; j < x; j++) {
            num += binom(n, x - j);
        }
        total += num / binom(n - 1, x);
    }
    return total;
}

MonteCarloResult classical_hitting_monte_carlo(const ColoredGraph &g, int start, int final_vertex, int64_t trials,
                                               uint64_t seed, int64_t step_cap) {
    int N = g.num_vertices();
    if (start < 0 || start >= N || final_vertex < 0 || final_vertex >= N) {
        throw std::invalid_argument("vertex out of range");
    }
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    std::vector<char> seen(N, 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto &kv : g.edges_at(v)) {
            if (!seen[kv.second.to]) {
                seen[kv.second.to] = 1;
                queue.push_back(kv.second.to);
            }
        }
    }
    if (!seen[final_vertex]) {
        throw std::invalid_argument("final vertex is not reachable from the start vertex");
    }

    std::vector<std::vector<int>> nbrs(N);
    for (int v = 0; v < N; v++) {
        for (const auto &kv : g.edges_at(v)) {
            nbrs[v].push_back(kv.second.to);
        }
    }
    auto run_trial = [&](int64_t k) -> int64_t {
        std::seed_seq seq{(uint32_t)seed, (uint32_t)(seed >> 32), (uint32_t)k, (uint32_t)((uint64_t)k >> 32)};
        std::mt19937_64 rng(seq);
        int v = start;
        int64_t steps = 0;
        while (v != final_vertex) {
            const auto &nb = nbrs[v];
            std::uniform_int_distribution<size_t> pick(0, nb.size() - 1);
            v = nb[pick(rng)];
            if (++steps > step_cap) {
                throw IndeterminateError("random walk exceeded the step cap in trial " + std::to_string(k));
            }
        }
        return steps;
    };

    int workers = std::max(1u, std::thread::hardware_concurrency());
    // Integer sums keep the result independent of how trials are split across threads.
    using u128 = unsigned __int128;
    std::vector<std::future<std::pair<u128, u128>>> parts;
    for (int w = 0; w < workers; w++) {
        parts.push_back(std::async(std::launch::async, [&, w]() {
            u128 s = 0, s2 = 0;
            for (int64_t k = w; k < trials; k += workers) {
                u128 x = (u128)run_trial(k);
                s += x;
                s2 += x * x;
            }
            return std::make_pair(s, s2);
        }));
    }
    u128 s = 0, s2 = 0;
    for (auto &f : parts) {
        auto [a, b] = f.get();
        s += a;
        s2 += b;
    }
    MonteCarloResult r;
    r.trials = trials;
    r.seed = seed;
    long double ls = (long double)s, ls2 = (long double)s2, n = (long double)trials;
    r.mean = (double)(ls / n);
    double var = trials > 1 ? (double)std::max(0.0L, (ls2 - ls * ls / n) / (n - 1)) : 0.0;
    r.stderr_ = std::sqrt(var / (double)trials);
    return r;
}

}  // namespace qwalk
