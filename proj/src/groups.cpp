#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coword/analysis.hpp"
#include "coword/error.hpp"

namespace coword::analysis {

namespace {

constexpr std::size_t kTopKeywords = 5;

// doc_frequency descending, then label ascending.
std::vector<std::string> ranked(std::vector<std::string> labels, const FrequencyMap& freq) {
    auto df = [&freq](const std::string& l) {
        const auto it = freq.find(l);
        return it == freq.end() ? std::int64_t{0} : it->second;
    };
    std::sort(labels.begin(), labels.end(), [&](const std::string& a, const std::string& b) {
        const auto fa = df(a);
        const auto fb = df(b);
        return fa != fb ? fa > fb : a < b;
    });
    return labels;
}

}  // namespace

std::vector<Group> extract_groups(const graph::CoWordGraph& network, const CentralityScores& scores,
                                  double threshold, const FrequencyMap& frequencies,
                                  const SensorRules& sensors) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorKind::ThresholdOutOfRange, "threshold must lie in [0, 1]");

    const graph::IndexedGraph g(network);
    const std::size_t n = g.size();
    std::vector<double> score(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto it = scores.find(g.labels[v]);
        if (it == scores.end())
            throw Error(ErrorKind::InvalidArgument, "no centrality score for '" + g.labels[v] + "'");
        score[v] = it->second;
    }
    std::vector<bool> is_head(n);
    for (std::size_t v = 0; v < n; ++v) is_head[v] = score[v] > threshold;

    // Fragments: components of the graph with all heads deleted.
    graph::DisjointSets frag(n);
    for (const auto& e : g.edges)
        if (!is_head[e.u] && !is_head[e.v]) frag.unite(e.u, e.v);
    std::map<std::size_t, std::vector<std::size_t>> fragments;  // root -> nodes
    std::map<std::size_t, std::set<std::size_t>> touching;       // root -> adjacent heads
    for (std::size_t v = 0; v < n; ++v) {
        if (is_head[v]) continue;
        const auto root = frag.find(v);
        fragments[root].push_back(v);
        for (const auto& [w, e] : g.adjacency[v])
            if (is_head[w]) touching[root].insert(w);
    }

    // Better = higher score, then smaller label (indices follow label order).
    auto better = [&score](std::size_t a, std::size_t b) {
        return score[a] != score[b] ? score[a] > score[b] : a < b;
    };

    std::map<std::size_t, std::vector<std::size_t>> members;  // head -> nodes
    std::vector<std::size_t> fallback_heads;
    for (std::size_t v = 0; v < n; ++v)
        if (is_head[v]) members[v].push_back(v);
    for (const auto& [root, nodes] : fragments) {
        const auto t = touching.find(root);
        std::size_t head = 0;
        if (t != touching.end() && !t->second.empty()) {
            head = *std::min_element(t->second.begin(), t->second.end(), better);
        } else {
            // No head anywhere in this component: the fragment is the component.
            head = *std::min_element(nodes.begin(), nodes.end(), better);
            fallback_heads.push_back(head);
        }
        auto& m = members[head];
        m.insert(m.end(), nodes.begin(), nodes.end());
    }

    std::vector<Group> groups;
    groups.reserve(members.size());
    for (auto& [head, nodes] : members) {
        Group grp;
        grp.head = g.labels[head];
        grp.head_score = score[head];
        grp.fallback = std::find(fallback_heads.begin(), fallback_heads.end(), head) != fallback_heads.end();
        for (const auto v : nodes) grp.members.push_back(g.labels[v]);
        std::sort(grp.members.begin(), grp.members.end());

        std::vector<std::string> others;
        std::vector<std::string> sensor_members;
        for (const auto& m : grp.members) {
            if (m != grp.head) others.push_back(m);
            if (sensors.matches(m)) sensor_members.push_back(m);
        }
        grp.top_keywords = ranked(std::move(others), frequencies);
        if (grp.top_keywords.size() > kTopKeywords) grp.top_keywords.resize(kTopKeywords);
        grp.sensors = ranked(std::move(sensor_members), frequencies);
        groups.push_back(std::move(grp));
    }
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        if (a.fallback != b.fallback) return !a.fallback;
        if (a.head_score != b.head_score) return a.head_score > b.head_score;
        return a.head < b.head;
    });
    return groups;
}

std::vector<Group> extract_groups(const graph::CoWordGraph& network, const CentralityScores& scores,
                                  double threshold, const SensorRules& sensors) {
    return extract_groups(network, scores, threshold, network.nodes(), sensors);
}

bool SensorMatrix::cell(const std::string& sensor, const std::string& corpus) const {
    const auto r = std::find(sensors.begin(), sensors.end(), sensor);
    const auto c = std::find(corpora.begin(), corpora.end(), corpus);
    if (r == sensors.end() || c == corpora.end()) return false;
    return present[static_cast<std::size_t>(r - sensors.begin())][static_cast<std::size_t>(c - corpora.begin())];
}

SensorMatrix build_sensor_matrix(const CorpusGroups& group_sets) {
    SensorMatrix m;
    std::map<std::string, std::vector<bool>> rows;
    for (std::size_t c = 0; c < group_sets.size(); ++c) {
        m.corpora.push_back(group_sets[c].first);
        for (const auto& grp : group_sets[c].second)
            for (const auto& s : grp.sensors) {
                auto& row = rows[s];
                row.resize(group_sets.size(), false);
                row[c] = true;
            }
    }
    std::vector<std::pair<std::string, std::vector<bool>>> ordered(rows.begin(), rows.end());
    auto present_count = [](const std::vector<bool>& r) { return std::count(r.begin(), r.end(), true); };
    std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
        return present_count(a.second) > present_count(b.second);
    });
    for (auto& [label, row] : ordered) {
        m.sensors.push_back(label);
        m.present.push_back(std::move(row));
    }
    return m;
}

nlohmann::json groups_to_json(const std::vector<Group>& groups) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& grp = groups[i];
        arr.push_back({{"index", i + 1},
                       {"head", grp.head},
                       {"head_score", grp.head_score},
                       {"fallback", grp.fallback},
                       {"members", grp.members},
                       {"top_keywords", grp.top_keywords},
                       {"sensors", grp.sensors}});
    }
    return arr;
}

std::vector<Group> groups_from_json(const nlohmann::json& j) {
    std::vector<Group> out;
    try {
        for (const auto& jg : j) {
            Group grp;
            grp.head = jg.at("head").get<std::string>();
            grp.head_score = jg.value("head_score", 0.0);
            grp.fallback = jg.value("fallback", false);
            grp.members = jg.value("members", std::vector<std::string>{});
            grp.top_keywords = jg.value("top_keywords", std::vector<std::string>{});
            grp.sensors = jg.value("sensors", std::vector<std::string>{});
            out.push_back(std::move(grp));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::FormatError, std::string("groups JSON: ") + e.what());
    }
    return out;
}

}  // namespace coword::analysis
