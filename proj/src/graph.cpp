#include "coword/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "coword/error.hpp"
#include "coword/sensor.hpp"

namespace coword::graph {

EdgeKey::EdgeKey(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
}

void CoWordGraph::set_node(const std::string& label, std::int64_t doc_frequency) {
    if (label.empty()) throw Error(ErrorKind::InvalidArgument, "node label is empty");
    nodes_[label] = doc_frequency;
}

void CoWordGraph::set_edge(const std::string& a, const std::string& b, Weight weight) {
    if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop on '" + a + "'");
    if (!has_node(a) || !has_node(b))
        throw Error(ErrorKind::InvalidArgument, "edge " + a + " -- " + b + " has a missing endpoint");
    edges_[EdgeKey(a, b)] = weight;
}

void CoWordGraph::add_to_edge(const std::string& a, const std::string& b, Weight delta) {
    if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop on '" + a + "'");
    if (!has_node(a) || !has_node(b))
        throw Error(ErrorKind::InvalidArgument, "edge " + a + " -- " + b + " has a missing endpoint");
    edges_[EdgeKey(a, b)] += delta;
}

Weight CoWordGraph::weight(const std::string& a, const std::string& b) const {
    const auto it = edges_.find(EdgeKey(a, b));
    return it == edges_.end() ? 0 : it->second;
}

std::int64_t CoWordGraph::doc_frequency(const std::string& label) const {
    const auto it = nodes_.find(label);
    return it == nodes_.end() ? 0 : it->second;
}

IndexedGraph::IndexedGraph(const CoWordGraph& g) {
    labels.reserve(g.node_count());
    std::map<std::string, std::size_t> index;
    for (const auto& [label, df] : g.nodes()) {
        index.emplace(label, labels.size());
        labels.push_back(label);
    }
    adjacency.resize(labels.size());
    edges.reserve(g.edge_count());
    for (const auto& [key, w] : g.edges()) {
        const std::size_t u = index.at(key.first);
        const std::size_t v = index.at(key.second);
        adjacency[u].emplace_back(v, edges.size());
        adjacency[v].emplace_back(u, edges.size());
        edges.push_back({u, v, w});
    }
    for (auto& adj : adjacency) std::sort(adj.begin(), adj.end());
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --sets_;
    return true;
}

std::vector<std::size_t> component_ids(const IndexedGraph& g) {
    DisjointSets ds(g.size());
    for (const auto& e : g.edges) ds.unite(e.u, e.v);
    std::vector<std::size_t> ids(g.size());
    std::map<std::size_t, std::size_t> dense;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto root = ds.find(i);
        const auto [it, inserted] = dense.emplace(root, dense.size());
        ids[i] = it->second;
    }
    return ids;
}

CoWordGraph build_coword_graph(const wos::Corpus& corpus) {
    CoWordGraph g;
    g.corpus_label = corpus.corpus_label;
    std::map<std::string, std::int64_t> df;
    std::vector<std::vector<std::string>> docs;
    docs.reserve(corpus.records.size());
    for (const auto& rec : corpus.records) {
        // Set semantics per document: a repeated keyword counts once.
        std::set<std::string> unique(rec.author_keywords.begin(), rec.author_keywords.end());
        for (const auto& kw : unique) ++df[kw];
        docs.emplace_back(unique.begin(), unique.end());
    }
    for (const auto& [label, count] : df) g.set_node(label, count);
    for (const auto& doc : docs)
        for (std::size_t i = 0; i < doc.size(); ++i)
            for (std::size_t j = i + 1; j < doc.size(); ++j) g.add_to_edge(doc[i], doc[j], 1);
    return g;
}

std::vector<std::string> isolated_nodes(const CoWordGraph& g) {
    std::set<std::string> touched;
    for (const auto& [key, w] : g.edges()) {
        touched.insert(key.first);
        touched.insert(key.second);
    }
    std::vector<std::string> out;
    for (const auto& [label, df] : g.nodes())
        if (!touched.count(label)) out.push_back(label);
    return out;
}

CoWordGraph remove_isolates(const CoWordGraph& g) {
    const auto isolated = isolated_nodes(g);
    const std::set<std::string> drop(isolated.begin(), isolated.end());
    CoWordGraph out;
    out.corpus_label = g.corpus_label;
    for (const auto& [label, df] : g.nodes())
        if (!drop.count(label)) out.set_node(label, df);
    for (const auto& [key, w] : g.edges()) out.set_edge(key.first, key.second, w);
    return out;
}

GraphStats graph_stats(const CoWordGraph& g, const analysis::SensorRules& sensors) {
    GraphStats s;
    s.node_count = g.node_count();
    s.edge_count = g.edge_count();
    const IndexedGraph ig(g);
    DisjointSets ds(ig.size());
    for (const auto& e : ig.edges) ds.unite(e.u, e.v);
    s.component_count = ds.set_count();
    for (const auto& [label, df] : g.nodes())
        if (sensors.matches(label)) ++s.sensor_node_count;
    return s;
}

nlohmann::json graph_to_json(const CoWordGraph& g) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& [label, df] : g.nodes())
        nodes.push_back({{"label", label}, {"doc_frequency", df}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [key, w] : g.edges())
        edges.push_back({{"source", key.first}, {"target", key.second}, {"weight", w}});
    return {{"corpus_label", g.corpus_label}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

CoWordGraph graph_from_json(const nlohmann::json& j) {
    CoWordGraph g;
    try {
        g.corpus_label = j.value("corpus_label", "");
        for (const auto& n : j.at("nodes")) {
            const auto label = n.at("label").get<std::string>();
            if (g.has_node(label)) throw Error(ErrorKind::FormatError, "duplicate node '" + label + "'");
            g.set_node(label, n.value("doc_frequency", std::int64_t{0}));
        }
        for (const auto& e : j.at("edges")) {
            const auto a = e.at("source").get<std::string>();
            const auto b = e.at("target").get<std::string>();
            if (g.weight(a, b) != 0) throw Error(ErrorKind::FormatError, "parallel edge " + a + " -- " + b);
            g.set_edge(a, b, e.at("weight").get<Weight>());
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::FormatError, std::string("graph JSON: ") + ex.what());
    }
    return g;
}

}  // namespace coword::graph
