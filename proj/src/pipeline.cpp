#include "coword/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "coword/analysis.hpp"
#include "coword/error.hpp"
#include "coword/export.hpp"
#include "coword/graph.hpp"
#include "coword/lexicon.hpp"
#include "coword/sensor.hpp"

namespace coword::pipeline {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, std::string_view content) {
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw Error(ErrorKind::IoError, "cannot create " + p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + p.string());
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::IoError, "sha256 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

std::size_t effective_threads(std::optional<std::size_t> configured) {
    std::size_t n = configured.value_or(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(n, 1);
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j, const fs::path& base_dir) {
    PipelineConfig c;
    c.base_dir = base_dir;
    try {
        for (const auto& jc : j.at("corpora")) {
            CorpusInput in;
            in.label = jc.at("label").get<std::string>();
            in.input = jc.at("input").get<std::string>();
            c.corpora.push_back(std::move(in));
        }
        if (j.contains("lexicon_rules") && !j.at("lexicon_rules").is_null())
            c.lexicon_rules = j.at("lexicon_rules").get<std::string>();
        if (j.contains("sensor_rules") && !j.at("sensor_rules").is_null())
            c.sensor_rules = j.at("sensor_rules").get<std::string>();
        if (j.contains("filter")) c.filter = wos::criteria_from_json(j.at("filter"));
        c.strict = j.value("strict", false);
        if (j.contains("pathfinder")) {
            const auto& p = j.at("pathfinder");
            c.pathfinder.mode = pathfinder::parse_mode(p.value("mode", "forced-tree"));
            c.pathfinder.tie = pathfinder::parse_tie(p.value("tie", "lex"));
            c.pathfinder.binarize = p.value("binarize", false);
        }
        c.threshold = j.value("threshold", analysis::kDefaultGroupThreshold);
        c.output_dir = j.value("output_dir", std::string("out"));
        if (j.contains("threads") && !j.at("threads").is_null()) c.threads = j.at("threads").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("config: ") + e.what());
    }
    for (auto& in : c.corpora) in.resolved = c.resolve(in.input);
    if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& config_file) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(config_file));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, config_file.string() + ": " + e.what());
    }
    return from_json(j, config_file.parent_path());
}

fs::path PipelineConfig::resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
}

void PipelineConfig::validate() const {
    if (corpora.empty()) throw Error(ErrorKind::ConfigError, "config lists no corpora");
    std::set<std::string> labels;
    for (const auto& in : corpora) {
        if (in.label.empty()) throw Error(ErrorKind::ConfigError, "corpus label is empty");
        // Labels become directory names under the output tree.
        if (in.label == "." || in.label == ".." || in.label.find_first_of("/\\") != std::string::npos)
            throw Error(ErrorKind::ConfigError, "corpus label '" + in.label + "' is not a plain name");
        if (!labels.insert(in.label).second)
            throw Error(ErrorKind::ConfigError, "duplicate corpus label '" + in.label + "'");
        if (!fs::is_regular_file(in.resolved))
            throw Error(ErrorKind::ConfigError, "input for '" + in.label + "' not found: " + in.resolved.string());
    }
    for (const auto* p : {&lexicon_rules, &sensor_rules})
        if (*p && !fs::is_regular_file(resolve(**p)))
            throw Error(ErrorKind::ConfigError, "rules file not found: " + resolve(**p).string());
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorKind::ConfigError, "threshold must lie in [0, 1]");
    filter.validate();
    if (pathfinder.mode == pathfinder::Mode::forced_tree && pathfinder.tie == pathfinder::TiePolicy::none)
        throw Error(ErrorKind::ConfigError, "forced-tree mode needs tie policy 'lex'");
}

nlohmann::json PipelineConfig::echo() const {
    nlohmann::json corp = nlohmann::json::array();
    for (const auto& in : corpora) corp.push_back({{"label", in.label}, {"input", in.input}});
    return {{"corpora", corp},
            {"lexicon_rules", lexicon_rules ? nlohmann::json(*lexicon_rules) : nlohmann::json(nullptr)},
            {"sensor_rules", sensor_rules ? nlohmann::json(*sensor_rules) : nlohmann::json(nullptr)},
            {"filter", wos::criteria_to_json(filter)},
            {"strict", strict},
            {"pathfinder",
             {{"mode", pathfinder::to_string(pathfinder.mode)},
              {"tie", pathfinder::to_string(pathfinder.tie)},
              {"binarize", pathfinder.binarize}}},
            {"threshold", threshold}};
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json corp = nlohmann::json::array();
    for (const auto& s : corpora) {
        corp.push_back({{"label", s.label},
                        {"records_parsed", s.records_parsed},
                        {"parse_diagnostics", s.parse_diagnostics},
                        {"records_filtered", s.records_filtered},
                        {"keywords_dropped", s.keywords_dropped},
                        {"nodes_built", s.nodes_built},
                        {"isolates_removed", s.isolated_keywords.size()},
                        {"isolated_keywords", s.isolated_keywords},
                        {"nodes", s.nodes},
                        {"edges_before", s.edges_before},
                        {"edges_after", s.edges_after},
                        {"components", s.components},
                        {"sensor_nodes", s.sensor_nodes},
                        {"group_count", s.group_count},
                        {"fallback_groups", s.fallback_groups}});
    }
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"config", config},
            {"corpora", corp},
            {"warnings", warnings},
            {"outputs", output_hashes}};
}

namespace {

struct Shared {
    lexicon::Lexicon lexicon;
    analysis::SensorRules sensors = analysis::SensorRules::defaults();
};

struct CorpusOutcome {
    CorpusStats stats;
    std::vector<analysis::Group> groups;
    std::map<std::string, std::string> files;  // relative path -> content
    std::optional<std::string> warning;
};

class StageGuard {
public:
    StageGuard(const std::string& corpus, std::string& stage) : corpus_(corpus), stage_(stage) {}
    [[noreturn]] void rethrow() const {
        const std::string where = "corpus '" + corpus_ + "', stage " + stage_ + ": ";
        try {
            throw;
        } catch (const Error& e) {
            throw Error(e.kind(), where + e.what(), e.line());
        } catch (const std::exception& e) {
            throw Error(ErrorKind::InvalidArgument, where + e.what());
        }
    }

private:
    const std::string& corpus_;
    const std::string& stage_;
};

CorpusOutcome run_corpus(const PipelineConfig& config, const CorpusInput& input, const Shared& shared,
                         std::size_t bc_threads) {
    CorpusOutcome out;
    auto& st = out.stats;
    st.label = input.label;
    std::string stage = "ingest";
    const StageGuard guard(input.label, stage);
    try {
        const auto parsed = wos::parse_any(read_file(input.resolved), input.label, {config.strict});
        st.records_parsed = parsed.corpus.records.size();
        st.parse_diagnostics = parsed.diagnostics.size();

        stage = "filter";
        const auto filtered = wos::filter_corpus(parsed.corpus, config.filter);
        st.records_filtered = filtered.records.size();

        stage = "normalize";
        const auto normalized = lexicon::normalize_corpus(shared.lexicon, filtered);
        st.keywords_dropped = normalized.dropped.size();

        stage = "build";
        const auto built = graph::build_coword_graph(normalized.corpus);
        st.nodes_built = built.node_count();

        stage = "prune_isolates";
        st.isolated_keywords = graph::isolated_nodes(built);
        const auto pruned = graph::remove_isolates(built);
        st.edges_before = pruned.edge_count();

        if (pruned.node_count() == 0) {
            out.warning = "corpus '" + input.label + "' has an empty network; no network outputs written";
            return out;
        }

        stage = "pathfinder";
        const auto reduced = pathfinder::mst_pathfinder(pruned, config.pathfinder);
        const auto stats = graph::graph_stats(reduced.network, shared.sensors);
        st.nodes = stats.node_count;
        st.edges_after = stats.edge_count;
        st.components = stats.component_count;
        st.sensor_nodes = stats.sensor_node_count;

        stage = "betweenness";
        const auto scores = analysis::betweenness_centrality(reduced.network, {false, bc_threads});

        stage = "groups";
        out.groups = analysis::extract_groups(reduced.network, scores, config.threshold, shared.sensors);
        st.group_count = out.groups.size();
        st.fallback_groups = static_cast<std::size_t>(std::count_if(
            out.groups.begin(), out.groups.end(), [](const analysis::Group& g) { return g.fallback; }));

        stage = "export";
        const std::string dir = input.label + "/";
        const auto& freq = reduced.network.nodes();
        out.files[dir + "graph.json"] = graph::graph_to_json(pruned).dump(2) + "\n";
        out.files[dir + "network.json"] = pathfinder::network_to_json(reduced).dump(2) + "\n";
        out.files[dir + "scores.csv"] = exporting::export_scores(scores, freq);
        out.files[dir + "groups.csv"] = exporting::export_group_tables(out.groups);
        out.files[dir + "network.gexf"] = exporting::export_gexf(reduced.network, scores, freq);
    } catch (...) {
        guard.rethrow();
    }
    return out;
}

}  // namespace

RunReport run_pipeline(const PipelineConfig& config) {
    config.validate();

    Shared shared;
    try {
        if (config.lexicon_rules) shared.lexicon = lexicon::Lexicon::load(read_file(config.resolve(*config.lexicon_rules)));
        if (config.sensor_rules)
            shared.sensors = analysis::SensorRules::load(read_file(config.resolve(*config.sensor_rules)));
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("stage load_rules: ") + e.what(), e.line());
    }

    const std::size_t cap = effective_threads(config.threads);
    const std::size_t workers = std::clamp<std::size_t>(cap, 1, std::max<std::size_t>(config.corpora.size(), 1));
    const std::size_t bc_threads = std::max<std::size_t>(1, cap / workers);

    std::vector<CorpusOutcome> outcomes(config.corpora.size());
    std::vector<std::exception_ptr> failures(config.corpora.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < config.corpora.size(); i = next.fetch_add(1)) {
            try {
                outcomes[i] = run_corpus(config, config.corpora[i], shared, bc_threads);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);  // first corpus in config order

    RunReport report;
    report.config = config.echo();
    std::map<std::string, std::string> files;
    analysis::CorpusGroups group_sets;
    for (auto& o : outcomes) {
        report.corpora.push_back(o.stats);
        if (o.warning) report.warnings.push_back(*o.warning);
        group_sets.emplace_back(o.stats.label, o.groups);
        files.merge(o.files);
    }
    files["sensor_matrix.csv"] = exporting::export_sensor_matrix(analysis::build_sensor_matrix(group_sets));
    for (const auto& [rel, content] : files) report.output_hashes[rel] = sha256_hex(content);
    files["report.json"] = report.to_json().dump(2) + "\n";

    std::vector<fs::path> written;
    try {
        for (const auto& [rel, content] : files) {
            const fs::path p = config.output_dir / rel;
            write_file(p, content);
            written.push_back(p);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return report;
}

}  // namespace coword::pipeline
