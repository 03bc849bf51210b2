#include "coword/pathfinder.hpp"

#include <algorithm>
#include <numeric>

#include "coword/error.hpp"

namespace coword::pathfinder {

std::string_view to_string(Mode mode) {
    return mode == Mode::forced_tree ? "forced-tree" : "union-msts";
}

std::string_view to_string(TiePolicy tie) { return tie == TiePolicy::lexicographic ? "lex" : "none"; }

Mode parse_mode(std::string_view s) {
    if (s == "forced-tree" || s == "forced_tree") return Mode::forced_tree;
    if (s == "union-msts" || s == "union_of_msts") return Mode::union_of_msts;
    throw Error(ErrorKind::InvalidArgument, "unknown pathfinder mode '" + std::string(s) + "'");
}

TiePolicy parse_tie(std::string_view s) {
    if (s == "lex" || s == "lexicographic") return TiePolicy::lexicographic;
    if (s == "none") return TiePolicy::none;
    throw Error(ErrorKind::InvalidArgument, "unknown tie policy '" + std::string(s) + "'");
}

namespace {

void check_weights(const graph::CoWordGraph& g) {
    for (const auto& [key, w] : g.edges())
        if (w < 1)
            throw Error(ErrorKind::NegativeWeight, "edge " + key.first + " -- " + key.second +
                                                       " has weight " + std::to_string(w));
}

graph::CoWordGraph with_nodes_of(const graph::CoWordGraph& g) {
    graph::CoWordGraph out;
    out.corpus_label = g.corpus_label;
    for (const auto& [label, df] : g.nodes()) out.set_node(label, df);
    return out;
}

}  // namespace

PathfinderNetwork mst_pathfinder(const graph::CoWordGraph& g, const Options& options) {
    if (options.mode == Mode::forced_tree && options.tie == TiePolicy::none)
        throw Error(ErrorKind::InvalidArgument, "forced-tree mode needs a tie policy");
    check_weights(g);

    PathfinderNetwork result;
    result.network = with_nodes_of(g);
    result.input_edge_count = g.edge_count();
    result.mode = options.mode;
    result.tie = options.tie;
    result.binarized = options.binarize;

    const graph::IndexedGraph ig(g);
    auto selection_weight = [&](std::size_t e) -> graph::Weight {
        return options.binarize ? 1 : ig.edges[e].weight;
    };

    // Edge indices are already in lexicographic endpoint order; a stable sort
    // on weight keeps that order inside each weight class.
    std::vector<std::size_t> order(ig.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return selection_weight(a) > selection_weight(b);
    });

    graph::DisjointSets ds(ig.size());
    std::vector<std::size_t> kept;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && selection_weight(order[j]) == selection_weight(order[i])) ++j;
        if (options.mode == Mode::union_of_msts) {
            // Decide the whole class against the forest built from strictly
            // heavier edges, then merge.
            std::vector<std::size_t> accepted;
            for (std::size_t k = i; k < j; ++k) {
                const auto& e = ig.edges[order[k]];
                if (ds.find(e.u) != ds.find(e.v)) accepted.push_back(order[k]);
            }
            for (const auto idx : accepted) {
                ds.unite(ig.edges[idx].u, ig.edges[idx].v);
                kept.push_back(idx);
            }
        } else {
            for (std::size_t k = i; k < j; ++k) {
                const auto& e = ig.edges[order[k]];
                if (ds.unite(e.u, e.v)) kept.push_back(order[k]);
            }
        }
        i = j;
    }

    for (const auto idx : kept) {
        const auto& e = ig.edges[idx];
        result.network.set_edge(ig.labels[e.u], ig.labels[e.v], e.weight);
    }
    return result;
}

PathfinderNetwork pathfinder_oracle(const graph::CoWordGraph& g, std::optional<std::size_t> max_links,
                                    bool binarize) {
    check_weights(g);
    const graph::IndexedGraph ig(g);
    const std::size_t n = ig.size();

    PathfinderNetwork result;
    result.network = with_nodes_of(g);
    result.input_edge_count = g.edge_count();
    result.mode = Mode::union_of_msts;
    result.tie = TiePolicy::none;
    result.binarized = binarize;
    if (n == 0) return result;

    // 0 means "no path"; every real similarity is >= 1.
    std::vector<graph::Weight> direct(n * n, 0);
    for (const auto& e : ig.edges) {
        const graph::Weight w = binarize ? 1 : e.weight;
        direct[e.u * n + e.v] = w;
        direct[e.v * n + e.u] = w;
    }

    // strength[a][b] = best min-edge similarity over paths of <= q links.
    std::vector<graph::Weight> strength = direct;
    const std::size_t q = max_links.value_or(n - 1);
    if (q >= n - 1) {
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < n; ++a) {
                const graph::Weight ak = strength[a * n + k];
                if (ak == 0) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    const graph::Weight via = std::min(ak, strength[k * n + b]);
                    if (via > strength[a * n + b]) strength[a * n + b] = via;
                }
            }
    } else {
        for (std::size_t step = 1; step < q; ++step) {
            std::vector<graph::Weight> next = strength;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t m = 0; m < n; ++m) {
                    const graph::Weight am = strength[a * n + m];
                    if (am == 0) continue;
                    for (std::size_t b = 0; b < n; ++b) {
                        const graph::Weight via = std::min(am, direct[m * n + b]);
                        if (via > next[a * n + b]) next[a * n + b] = via;
                    }
                }
            strength = std::move(next);
        }
    }

    for (const auto& e : ig.edges) {
        const graph::Weight w = binarize ? 1 : e.weight;
        if (w >= strength[e.u * n + e.v]) result.network.set_edge(ig.labels[e.u], ig.labels[e.v], e.weight);
    }
    return result;
}

nlohmann::json network_to_json(const PathfinderNetwork& net) {
    nlohmann::json j = graph::graph_to_json(net.network);
    j["pathfinder"] = {{"mode", to_string(net.mode)},
                       {"tie", to_string(net.tie)},
                       {"binarize", net.binarized},
                       {"input_edge_count", net.input_edge_count}};
    return j;
}

PathfinderNetwork network_from_json(const nlohmann::json& j) {
    PathfinderNetwork net;
    net.network = graph::graph_from_json(j);
    net.input_edge_count = net.network.edge_count();
    if (j.contains("pathfinder")) {
        try {
            const auto& p = j.at("pathfinder");
            net.mode = parse_mode(p.value("mode", "forced-tree"));
            net.tie = parse_tie(p.value("tie", "lex"));
            net.binarized = p.value("binarize", false);
            net.input_edge_count = p.value("input_edge_count", net.network.edge_count());
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::FormatError, std::string("network JSON: ") + e.what());
        }
    }
    return net;
}

}  // namespace coword::pathfinder
