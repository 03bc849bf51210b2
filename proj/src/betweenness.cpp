#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <thread>

#include "coword/analysis.hpp"

namespace coword::analysis {

namespace {

// Sources are split into fixed-size chunks so that the floating-point
// reduction order is the same for every thread count.
constexpr std::size_t kSourcesPerChunk = 32;

struct Workspace {
    std::vector<double> sigma;
    std::vector<double> dist;
    std::vector<double> delta;
    std::vector<std::vector<std::size_t>> preds;
    std::vector<std::size_t> stack;

    explicit Workspace(std::size_t n) : sigma(n), dist(n), delta(n), preds(n) { stack.reserve(n); }
};

void single_source(const graph::IndexedGraph& g, std::size_t s, bool weighted, Workspace& ws,
                   std::vector<double>& acc) {
    const std::size_t n = g.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
    std::fill(ws.dist.begin(), ws.dist.end(), kInf);
    std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
    for (auto& p : ws.preds) p.clear();
    ws.stack.clear();

    ws.sigma[s] = 1.0;
    ws.dist[s] = 0.0;
    if (!weighted) {
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            ws.stack.push_back(v);
            for (const auto& [w, e] : g.adjacency[v]) {
                if (ws.dist[w] == kInf) {
                    ws.dist[w] = ws.dist[v] + 1.0;
                    q.push(w);
                }
                if (ws.dist[w] == ws.dist[v] + 1.0) {
                    ws.sigma[w] += ws.sigma[v];
                    ws.preds[w].push_back(v);
                }
            }
        }
    } else {
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        std::vector<bool> done(n, false);
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            const auto [d, v] = pq.top();
            pq.pop();
            if (done[v]) continue;
            done[v] = true;
            ws.stack.push_back(v);
            for (const auto& [w, e] : g.adjacency[v]) {
                if (done[w]) continue;
                const double nd = d + 1.0 / static_cast<double>(g.edges[e].weight);
                const double tol = 1e-12 * std::max(1.0, nd);
                if (nd < ws.dist[w] - tol) {
                    ws.dist[w] = nd;
                    ws.sigma[w] = ws.sigma[v];
                    ws.preds[w].assign(1, v);
                    pq.emplace(nd, w);
                } else if (std::abs(nd - ws.dist[w]) <= tol) {
                    ws.sigma[w] += ws.sigma[v];
                    ws.preds[w].push_back(v);
                }
            }
        }
    }

    for (auto it = ws.stack.rbegin(); it != ws.stack.rend(); ++it) {
        const std::size_t w = *it;
        for (const std::size_t v : ws.preds[w])
            ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
        if (w != s) acc[w] += ws.delta[w];
    }
}

CentralityScores normalize(const graph::IndexedGraph& g, const std::vector<double>& ordered_pair_sums) {
    const auto comp = graph::component_ids(g);
    std::vector<std::size_t> comp_size;
    for (const auto c : comp) {
        if (c >= comp_size.size()) comp_size.resize(c + 1, 0);
        ++comp_size[c];
    }
    CentralityScores out;
    for (std::size_t v = 0; v < g.size(); ++v) {
        const double n = static_cast<double>(comp_size[comp[v]]);
        // Each unordered pair was counted from both ends.
        out[g.labels[v]] = n < 3 ? 0.0 : ordered_pair_sums[v] / ((n - 1.0) * (n - 2.0));
    }
    return out;
}

}  // namespace

CentralityScores betweenness_centrality(const graph::CoWordGraph& network,
                                        const BetweennessOptions& options) {
    const graph::IndexedGraph g(network);
    const std::size_t n = g.size();
    const std::size_t chunks = (n + kSourcesPerChunk - 1) / kSourcesPerChunk;
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        Workspace ws(n);
        for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            const std::size_t end = std::min(n, (c + 1) * kSourcesPerChunk);
            for (std::size_t s = c * kSourcesPerChunk; s < end; ++s)
                single_source(g, s, options.weighted, ws, partial[c]);
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(chunks, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> total(n, 0.0);
    for (const auto& p : partial)
        for (std::size_t v = 0; v < n; ++v) total[v] += p[v];
    return normalize(g, total);
}

CentralityScores betweenness_oracle(const graph::CoWordGraph& network) {
    const graph::IndexedGraph g(network);
    const std::size_t n = g.size();
    constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kUnreached));
    std::vector<std::vector<double>> count(n, std::vector<double>(n, 0.0));

    for (std::size_t s = 0; s < n; ++s) {
        auto& d = dist[s];
        auto& c = count[s];
        d[s] = 0;
        c[s] = 1.0;
        std::vector<std::size_t> frontier{s};
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (const auto v : frontier)
                for (const auto& [w, e] : g.adjacency[v]) {
                    if (d[w] == kUnreached) {
                        d[w] = d[v] + 1;
                        next.push_back(w);
                    }
                    if (d[w] == d[v] + 1) c[w] += c[v];
                }
            frontier = std::move(next);
        }
    }

    std::vector<double> pairs_through(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            if (dist[s][t] == kUnreached) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == s || v == t || dist[s][v] == kUnreached || dist[v][t] == kUnreached) continue;
                if (dist[s][v] + dist[v][t] == dist[s][t])
                    pairs_through[v] += count[s][v] * count[v][t] / count[s][t];
            }
        }

    // normalize() expects ordered-pair sums.
    for (auto& x : pairs_through) x *= 2.0;
    return normalize(g, pairs_through);
}

}  // namespace coword::analysis
