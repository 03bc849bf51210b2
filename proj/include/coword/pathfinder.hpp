#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "coword/graph.hpp"

// Link reduction by Pathfinder network scaling with r = infinity and
// q = n - 1, where edge weights are similarities (higher = stronger).
namespace coword::pathfinder {

enum class Mode {
    // Every edge that belongs to at least one maximum spanning tree.
    union_of_msts,
    // Exactly one maximum spanning forest, ties broken by tie_policy.
    forced_tree,
};

enum class TiePolicy {
    // Equal-weight edges are taken in ascending (first, second) label order.
    lexicographic,
    // No tie breaking; only meaningful for union_of_msts.
    none,
};

std::string_view to_string(Mode mode);
std::string_view to_string(TiePolicy tie);
Mode parse_mode(std::string_view s);       // "forced-tree" | "union-msts"
TiePolicy parse_tie(std::string_view s);   // "lex" | "none"

struct Options {
    Mode mode = Mode::forced_tree;
    TiePolicy tie = TiePolicy::lexicographic;
    // Treat every weight as 1 while selecting edges; kept edges keep their counts.
    bool binarize = false;
};

struct PathfinderNetwork {
    // Same node set as the input, kept edges only, original weights.
    graph::CoWordGraph network;
    std::size_t input_edge_count = 0;
    Mode mode = Mode::forced_tree;
    TiePolicy tie = TiePolicy::lexicographic;
    bool binarized = false;
};

// Kruskal sweep over weight classes in descending order. Throws
// Error{NegativeWeight} for weights below 1 and Error{InvalidArgument} for
// forced_tree with TiePolicy::none.
PathfinderNetwork mst_pathfinder(const graph::CoWordGraph& g, const Options& options = {});

// Reference PFNET(infinity, q): max-min closure over paths of at most
// max_links links (default n - 1); an edge survives iff no such path is
// strictly stronger. Cubic per step, intended for small graphs.
PathfinderNetwork pathfinder_oracle(const graph::CoWordGraph& g,
                                    std::optional<std::size_t> max_links = std::nullopt,
                                    bool binarize = false);

nlohmann::json network_to_json(const PathfinderNetwork& net);
PathfinderNetwork network_from_json(const nlohmann::json& j);

}  // namespace coword::pathfinder
