#pragma once

// Test-side helpers: graph generators and brute-force reference answers that
// do not share code with the library algorithms they check.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coword/graph.hpp"

namespace support {

using coword::graph::CoWordGraph;
using coword::graph::EdgeKey;
using coword::graph::Weight;

inline std::filesystem::path data_dir() { return COWORD_DATA_DIR; }

inline std::string node_name(std::size_t i) {
    // Zero padded so label order equals index order.
    std::string s = std::to_string(i);
    return "n" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

struct Edge {
    std::size_t u, v;
    Weight w;
};

inline CoWordGraph make_graph(std::size_t n, const std::vector<Edge>& edges) {
    CoWordGraph g;
    g.corpus_label = "test";
    for (std::size_t i = 0; i < n; ++i) g.set_node(node_name(i), 1);
    for (const auto& e : edges) g.set_edge(node_name(e.u), node_name(e.v), e.w);
    return g;
}

inline bool connected(std::size_t n, const std::vector<Edge>& edges) {
    if (n == 0) return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (const auto y : adj[x])
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n;
}

// Random connected graph: random tree plus each remaining pair with prob p.
inline std::vector<Edge> random_connected(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        auto a = order[i], b = order[pick(rng)];
        if (a > b) std::swap(a, b);
        used.insert({a, b});
        edges.push_back({a, b, 1});
    }
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!used.count({a, b}) && coin(rng)) edges.push_back({a, b, 1});
    return edges;
}

// Possibly disconnected: each pair independently with prob p.
inline std::vector<Edge> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng)) edges.push_back({a, b, 1});
    return edges;
}

inline void distinct_weights(std::vector<Edge>& edges, std::mt19937_64& rng) {
    std::vector<Weight> w(edges.size());
    std::iota(w.begin(), w.end(), 1);
    std::shuffle(w.begin(), w.end(), rng);
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].w = w[i];
}

inline void small_weights(std::vector<Edge>& edges, Weight max_w, std::mt19937_64& rng) {
    std::uniform_int_distribution<Weight> d(1, max_w);
    for (auto& e : edges) e.w = d(rng);
}

inline std::set<EdgeKey> edge_set(const CoWordGraph& g) {
    std::set<EdgeKey> s;
    for (const auto& [k, w] : g.edges()) s.insert(k);
    return s;
}

inline std::size_t component_count(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::size_t> comp(n, n);
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::size_t c = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != n) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (const auto y : adj[x])
                if (comp[y] == n) {
                    comp[y] = c;
                    stack.push_back(y);
                }
        }
        ++c;
    }
    return c;
}

// Pathfinder(inf, n-1) by definition, per edge: (a, b) is dropped iff a and b
// are joined by a path whose every link is strictly stronger than w(a, b).
inline std::set<EdgeKey> pathfinder_by_definition(std::size_t n, const std::vector<Edge>& edges) {
    std::set<EdgeKey> kept;
    for (const auto& e : edges) {
        std::vector<Edge> stronger;
        for (const auto& f : edges)
            if (f.w > e.w) stronger.push_back(f);
        std::vector<std::vector<std::size_t>> adj(n);
        for (const auto& f : stronger) {
            adj[f.u].push_back(f.v);
            adj[f.v].push_back(f.u);
        }
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{e.u};
        seen[e.u] = true;
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (const auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
        }
        if (!seen[e.v]) kept.insert(EdgeKey(node_name(e.u), node_name(e.v)));
    }
    return kept;
}

// Same question answered from explicit simple-path enumeration (tiny graphs).
inline std::set<EdgeKey> pathfinder_by_paths(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<std::size_t, Weight>>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    std::set<EdgeKey> kept;
    for (const auto& e : edges) {
        Weight best = 0;  // strongest indirect path
        std::vector<bool> on(n, false);
        std::function<void(std::size_t, Weight, std::size_t)> dfs = [&](std::size_t x, Weight bottleneck,
                                                                      std::size_t links) {
            if (x == e.v) {
                if (links > 1) best = std::max(best, bottleneck);
                return;
            }
            on[x] = true;
            for (const auto& [y, w] : adj[x])
                if (!on[y]) dfs(y, std::min(bottleneck, w), links + 1);
            on[x] = false;
        };
        dfs(e.u, std::numeric_limits<Weight>::max(), 0);
        if (e.w >= best) kept.insert(EdgeKey(node_name(e.u), node_name(e.v)));
    }
    return kept;
}

// Every maximum spanning forest, by trying all edge subsets of size n - c.
inline std::vector<std::set<EdgeKey>> all_max_spanning_forests(std::size_t n, const std::vector<Edge>& edges) {
    const std::size_t c = component_count(n, edges);
    const std::size_t k = n - c;
    const std::size_t m = edges.size();
    Weight best = -1;
    std::vector<std::set<EdgeKey>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
        std::vector<Edge> sub;
        Weight total = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) {
                sub.push_back(edges[i]);
                total += edges[i].w;
            }
        if (component_count(n, sub) != c) continue;
        std::set<EdgeKey> s;
        for (const auto& e : sub) s.insert(EdgeKey(node_name(e.u), node_name(e.v)));
        if (total > best) {
            best = total;
            out.clear();
        }
        if (total == best) out.push_back(std::move(s));
    }
    return out;
}

// Normalized hop-count betweenness from an explicit list of every shortest
// path between every pair; each pair splits one unit evenly over its paths.
inline std::vector<double> betweenness_by_paths(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (std::size_t s = 0; s < n; ++s) {
        std::queue<std::size_t> q;
        q.push(s);
        dist[s][s] = 0;
        while (!q.empty()) {
            const auto x = q.front();
            q.pop();
            for (const auto y : adj[x])
                if (dist[s][y] < 0) {
                    dist[s][y] = dist[s][x] + 1;
                    q.push(y);
                }
        }
    }
    std::vector<double> raw(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            if (dist[s][t] < 0) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> cur{s};
            std::function<void(std::size_t)> walk = [&](std::size_t x) {
                if (x == t) {
                    paths.push_back(cur);
                    return;
                }
                for (const auto y : adj[x])
                    if (dist[s][y] == dist[s][x] + 1 && dist[y][t] == dist[x][t] - 1) {
                        cur.push_back(y);
                        walk(y);
                        cur.pop_back();
                    }
            };
            walk(s);
            for (const auto& p : paths)
                for (std::size_t i = 1; i + 1 < p.size(); ++i) raw[p[i]] += 1.0 / static_cast<double>(paths.size());
        }
    // Component sizes for the normalization.
    std::vector<double> out(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t size = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (dist[v][x] >= 0) ++size;
        if (size < 3) continue;
        out[v] = raw[v] / (static_cast<double>(size - 1) * static_cast<double>(size - 2) / 2.0);
    }
    return out;
}

// All rooted trees with n nodes as canonical level sequences (every unlabeled
// free tree shows up at least once). Beyer and Hedetniemi's successor rule.
inline std::vector<std::vector<Edge>> all_trees(std::size_t n) {
    std::vector<std::vector<Edge>> out;
    if (n == 1) {
        out.push_back({});
        return out;
    }
    std::vector<std::size_t> level(n);
    std::iota(level.begin(), level.end(), 0);
    while (true) {
        std::vector<Edge> edges;
        std::vector<std::size_t> last_at(n, 0);
        for (std::size_t i = 1; i < n; ++i) {
            last_at[level[i]] = i;
            edges.push_back({last_at[level[i] - 1], i, 1});
        }
        out.push_back(std::move(edges));
        std::size_t p = n;
        for (std::size_t i = n; i-- > 1;)
            if (level[i] > 1) {
                p = i;
                break;
            }
        if (p == n) break;  // star: last sequence
        std::size_t q = p;
        while (level[q] != level[p] - 1) --q;
        for (std::size_t i = p; i < n; ++i) level[i] = level[i - p + q];
    }
    return out;
}

// Random keywords built from pieces that hit every stage: rule terms,
// plural endings, hyphens, odd spacing, accented and Greek letters.
inline std::string random_keyword(std::mt19937_64& rng) {
    static const std::vector<std::string> pieces = {
        "bio", "sensor", "sensors", "-", " ", "  ", "\t", "s", "ss", "us", "is", "ies", "ampk", "AMPK",
        "voc", "e-nose", "nose", "au", "nps", "species", "computer", "computers", "Nano", "É", "é",
        "Σ", "ς", "σ", "ß", "ẞ", "İ", "ı", "Ω", "K", "7", "mcf", "(", ")", "psa", "real", "time", "label",
        "free", "x", "A", "Antibodies", "gas", "cmos", "Ǆ", "ǅ", "ﬁ", "µ", "Μ"};
    std::uniform_int_distribution<std::size_t> len(1, 7);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::string s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng)];
    return s;
}

}  // namespace support
