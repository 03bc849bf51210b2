#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "coword/graph.hpp"
#include "coword/sensor.hpp"

namespace coword::analysis {

// Normalized betweenness per node label, each in [0, 1].
using CentralityScores = std::map<std::string, double>;
using FrequencyMap = std::map<std::string, std::int64_t>;

struct BetweennessOptions {
    // Shortest paths by 1/weight instead of hop count.
    bool weighted = false;
    // Worker threads for the single-source passes; results do not depend on it.
    std::size_t threads = 1;
};

// Brandes accumulation over every source; raw pair counts are divided by
// (n-1)(n-2)/2 where n is the size of the node's component (0 when n < 3).
CentralityScores betweenness_centrality(const graph::CoWordGraph& network,
                                        const BetweennessOptions& options = {});

// Reference implementation: for every pair (s, t) the share of shortest s-t
// paths through v, from per-node BFS distances and path counts. Hop counts only.
CentralityScores betweenness_oracle(const graph::CoWordGraph& network);

constexpr double kDefaultGroupThreshold = 0.1;

struct Group {
    std::string head;
    std::vector<std::string> members;       // sorted, head included
    std::vector<std::string> top_keywords;  // <= 5, head excluded
    std::vector<std::string> sensors;       // sensor members, same ranking
    double head_score = 0.0;
    // Component without any node above the threshold.
    bool fallback = false;

    bool operator==(const Group&) const = default;
};

// Heads are nodes scoring above threshold. Removing the heads splits the
// remaining nodes into fragments; each fragment joins its adjacent head with
// the highest score (ties: smallest label). A component without heads forms
// one fallback group led by its best-scoring node. Groups are returned by
// descending head score, fallback groups last. Throws ThresholdOutOfRange.
std::vector<Group> extract_groups(const graph::CoWordGraph& network, const CentralityScores& scores,
                                  double threshold, const FrequencyMap& frequencies,
                                  const SensorRules& sensors = SensorRules::defaults());

// Frequencies taken from the network's own doc_frequency values.
std::vector<Group> extract_groups(const graph::CoWordGraph& network, const CentralityScores& scores,
                                  double threshold = kDefaultGroupThreshold,
                                  const SensorRules& sensors = SensorRules::defaults());

struct SensorMatrix {
    std::vector<std::string> corpora;  // column order as given
    std::vector<std::string> sensors;  // rows: corpora present desc, then label
    std::vector<std::vector<bool>> present;  // [row][column]

    bool cell(const std::string& sensor, const std::string& corpus) const;
};

using CorpusGroups = std::vector<std::pair<std::string, std::vector<Group>>>;

SensorMatrix build_sensor_matrix(const CorpusGroups& group_sets);

nlohmann::json groups_to_json(const std::vector<Group>& groups);
std::vector<Group> groups_from_json(const nlohmann::json& j);

}  // namespace coword::analysis
