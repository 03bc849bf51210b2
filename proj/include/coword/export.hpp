#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coword/analysis.hpp"
#include "coword/graph.hpp"

// Byte-deterministic file writers (and the GEXF reader used to re-open them).
namespace coword::exporting {

// GEXF 1.2 undirected graph. Node attributes: doc_frequency, betweenness;
// viz:size carries the betweenness; edge weight is the co-occurrence count.
std::string export_gexf(const graph::CoWordGraph& network, const analysis::CentralityScores& scores,
                        const analysis::FrequencyMap& frequencies);

struct GexfContents {
    graph::CoWordGraph network;
    analysis::CentralityScores scores;
};

GexfContents read_gexf(std::string_view xml);

std::string export_graphml(const graph::CoWordGraph& network, const analysis::CentralityScores& scores,
                           const analysis::FrequencyMap& frequencies);

// group_index,core_keyword,top5_keywords,related_sensors; lists joined by "; ".
std::string export_group_tables(const std::vector<analysis::Group>& groups);

// label,doc_frequency,betweenness in label order.
std::string export_scores(const analysis::CentralityScores& scores, const analysis::FrequencyMap& frequencies);

// sensor,<corpus...> with 1/0 cells.
std::string export_sensor_matrix(const analysis::SensorMatrix& matrix);

}  // namespace coword::exporting
