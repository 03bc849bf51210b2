#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "coword/pathfinder.hpp"
#include "coword/wos.hpp"

namespace coword::pipeline {

inline constexpr const char* kToolName = "coword_atlas";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kThreadsEnv = "COWORD_ATLAS_THREADS";

struct CorpusInput {
    std::string label;
    std::string input;  // as written in the config
    std::filesystem::path resolved;
};

// JSON schema:
// {
//   "corpora": [{"label": "breast", "input": "breast.txt"}, ...],
//   "lexicon_rules": "rules.csv",          optional
//   "sensor_rules": "sensors.txt",         optional
//   "filter": { criteria keys },           optional, default keeps everything
//   "strict": false,
//   "pathfinder": {"mode": "forced-tree", "tie": "lex", "binarize": false},
//   "threshold": 0.1,
//   "output_dir": "out",
//   "threads": 4                           optional
// }
// Relative paths resolve against the config file's directory.
struct PipelineConfig {
    std::vector<CorpusInput> corpora;
    std::optional<std::string> lexicon_rules;
    std::optional<std::string> sensor_rules;
    std::filesystem::path base_dir;
    wos::FilterCriteria filter;
    bool strict = false;
    pathfinder::Options pathfinder;
    double threshold = 0.1;
    std::filesystem::path output_dir = "out";
    std::optional<std::size_t> threads;

    static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
    static PipelineConfig load(const std::filesystem::path& config_file);

    std::filesystem::path resolve(const std::string& p) const;
    // Throws Error{ConfigError} for missing inputs, duplicate labels or a bad threshold.
    void validate() const;
    // Everything that influences outputs; output_dir and threads are left out
    // so reports do not depend on where or how wide a run happens.
    nlohmann::json echo() const;
};

struct CorpusStats {
    std::string label;
    std::size_t records_parsed = 0;
    std::size_t parse_diagnostics = 0;
    std::size_t records_filtered = 0;
    std::size_t keywords_dropped = 0;
    std::size_t nodes_built = 0;
    std::vector<std::string> isolated_keywords;
    std::size_t nodes = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;
    std::size_t components = 0;
    std::size_t sensor_nodes = 0;
    std::size_t group_count = 0;
    std::size_t fallback_groups = 0;
};

struct RunReport {
    std::vector<CorpusStats> corpora;
    nlohmann::json config;
    std::map<std::string, std::string> output_hashes;  // relative path -> sha256 hex
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

// ingest -> filter -> normalize -> build -> prune isolates -> pathfinder ->
// betweenness -> groups per corpus (concurrently), then the sensor matrix and
// all exports. Nothing is left on disk when a stage fails; the error names
// the corpus and stage.
RunReport run_pipeline(const PipelineConfig& config);

// Worker cap: config value (default hardware concurrency) bounded by the
// COWORD_ATLAS_THREADS environment variable.
std::size_t effective_threads(std::optional<std::size_t> configured);

std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

}  // namespace coword::pipeline
