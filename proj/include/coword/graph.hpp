#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "coword/wos.hpp"

namespace coword {

namespace analysis {
class SensorRules;
}

namespace graph {

using Weight = std::int64_t;

// Unordered label pair stored with first < second.
struct EdgeKey {
    std::string first;
    std::string second;

    EdgeKey(std::string a, std::string b);
    auto operator<=>(const EdgeKey&) const = default;
};

// Undirected, simple, weighted keyword co-occurrence graph. Node identity is
// the canonical keyword; iteration order is lexicographic everywhere.
class CoWordGraph {
public:
    // Inserts or overwrites a node's document frequency.
    void set_node(const std::string& label, std::int64_t doc_frequency);
    // Both endpoints must exist; self-loops are rejected.
    void set_edge(const std::string& a, const std::string& b, Weight weight);
    void add_to_edge(const std::string& a, const std::string& b, Weight delta);

    const std::map<std::string, std::int64_t>& nodes() const { return nodes_; }
    const std::map<EdgeKey, Weight>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool has_node(const std::string& label) const { return nodes_.count(label) != 0; }
    // 0 when absent.
    Weight weight(const std::string& a, const std::string& b) const;
    std::int64_t doc_frequency(const std::string& label) const;

    std::string corpus_label;

    bool operator==(const CoWordGraph&) const = default;

private:
    std::map<std::string, std::int64_t> nodes_;
    std::map<EdgeKey, Weight> edges_;
};

// Dense-index view used by the graph algorithms. Node i is the i-th label in
// lexicographic order; edges are listed in (first, second) label order.
struct IndexedGraph {
    struct Edge {
        std::size_t u;
        std::size_t v;
        Weight weight;
    };

    std::vector<std::string> labels;
    std::vector<Edge> edges;
    // adjacency[i] = (neighbour, edge index), neighbours ascending.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;

    explicit IndexedGraph(const CoWordGraph& g);
    std::size_t size() const { return labels.size(); }
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    // Returns false when already joined.
    bool unite(std::size_t a, std::size_t b);
    std::size_t set_count() const { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
    std::size_t sets_;
};

// Component id per node of the indexed view, ids dense in order of first node.
std::vector<std::size_t> component_ids(const IndexedGraph& g);

CoWordGraph build_coword_graph(const wos::Corpus& corpus);

std::vector<std::string> isolated_nodes(const CoWordGraph& g);
CoWordGraph remove_isolates(const CoWordGraph& g);

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t component_count = 0;
    std::size_t sensor_node_count = 0;

    bool operator==(const GraphStats&) const = default;
};

GraphStats graph_stats(const CoWordGraph& g, const analysis::SensorRules& sensors);

// Deterministic JSON: nodes sorted by label, edges by endpoint pair.
nlohmann::json graph_to_json(const CoWordGraph& g);
CoWordGraph graph_from_json(const nlohmann::json& j);

}  // namespace graph
}  // namespace coword
