// coword_atlas: command line front end. Every stage reads and writes the
// same JSON artifacts the pipeline caches, so stages can be re-run alone.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coword/analysis.hpp"
#include "coword/error.hpp"
#include "coword/export.hpp"
#include "coword/graph.hpp"
#include "coword/lexicon.hpp"
#include "coword/pathfinder.hpp"
#include "coword/pipeline.hpp"
#include "coword/sensor.hpp"
#include "coword/wos.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace coword;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedRecord:
    case ErrorKind::EncodingError:
    case ErrorKind::FormatError: return 3;
    case ErrorKind::RuleCycle:
    case ErrorKind::DuplicatePattern:
    case ErrorKind::InvalidRule: return 4;
    case ErrorKind::EmptyAfterNormalization:
    case ErrorKind::NegativeWeight:
    case ErrorKind::ThresholdOutOfRange:
    case ErrorKind::InvalidArgument: return 5;
    case ErrorKind::ConfigError: return 6;
    case ErrorKind::IoError: return 7;
    }
    return 1;
}

json read_json(const std::string& path) {
    const std::string body = pipeline::read_file(path);
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::FormatError, path + ": " + e.what());
    }
}

// "-" (the default) is stdout.
void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    pipeline::write_file(out, content);
}

void emit_json(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

analysis::SensorRules sensor_rules(const std::string& path) {
    return path.empty() ? analysis::SensorRules::defaults() : analysis::SensorRules::load(pipeline::read_file(path));
}

std::size_t threads_for(std::optional<std::size_t> requested) { return pipeline::effective_threads(requested); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-word network analysis of Web of Science keyword exports"};
    app.set_version_flag("--version", std::string(pipeline::kToolVersion));
    app.require_subcommand(1);

    // ingest
    std::string ingest_file, ingest_label, ingest_filter, ingest_out = "-";
    bool ingest_strict = false;
    auto* ingest = app.add_subcommand("ingest", "Parse a WOS export into corpus JSON");
    ingest->add_option("file", ingest_file, "Field-tagged or tab-delimited export")->required();
    ingest->add_option("--label", ingest_label, "Corpus label")->required();
    ingest->add_flag("--strict", ingest_strict, "Fail on the first malformed record");
    ingest->add_option("--filter", ingest_filter, "Criteria JSON");
    ingest->add_option("-o,--output", ingest_out, "Output file");

    // normalize
    std::string norm_file, norm_rules, norm_out = "-";
    auto* normalize = app.add_subcommand("normalize", "Apply keyword normalization rules");
    normalize->add_option("corpus", norm_file, "Corpus JSON")->required();
    normalize->add_option("--rules", norm_rules, "Rules CSV (built-in rules only when omitted)");
    normalize->add_option("-o,--output", norm_out, "Output file");

    // build
    std::string build_file, build_out = "-";
    bool keep_isolates = false;
    auto* build = app.add_subcommand("build", "Build the co-occurrence graph");
    build->add_option("corpus", build_file, "Normalized corpus JSON")->required();
    build->add_flag("--keep-isolates", keep_isolates, "Do not drop degree-0 keywords");
    build->add_option("-o,--output", build_out, "Output file");

    // reduce
    std::string reduce_file, reduce_out = "-", reduce_mode = "forced-tree", reduce_tie = "lex";
    bool binarize = false;
    auto* reduce = app.add_subcommand("reduce", "Pathfinder link reduction");
    reduce->add_option("graph", reduce_file, "Graph JSON")->required();
    reduce->add_option("--mode", reduce_mode, "forced-tree | union-msts")->check(CLI::IsMember({"forced-tree", "union-msts"}));
    reduce->add_option("--tie", reduce_tie, "lex | none")->check(CLI::IsMember({"lex", "none"}));
    reduce->add_flag("--binarize", binarize, "Select edges as if every weight were 1");
    reduce->add_option("-o,--output", reduce_out, "Output file");

    // analyze
    std::vector<std::string> analyze_files;
    std::string analyze_rules, analyze_dir = ".";
    double analyze_threshold = analysis::kDefaultGroupThreshold;
    bool analyze_weighted = false;
    std::optional<std::size_t> analyze_threads;
    auto* analyze = app.add_subcommand("analyze", "Betweenness, path groups and the sensor matrix");
    analyze->add_option("networks", analyze_files, "Network JSON, one per corpus")->required();
    analyze->add_option("--threshold", analyze_threshold, "Head threshold on normalized betweenness");
    analyze->add_option("--sensor-rules", analyze_rules, "Sensor term rules");
    analyze->add_option("--out-dir", analyze_dir, "Directory for groups.json and matrix.csv");
    analyze->add_flag("--weighted", analyze_weighted, "Shortest paths by 1/weight");
    analyze->add_option("--threads", analyze_threads, "Worker threads");

    // run
    std::string run_config, run_out;
    std::optional<double> run_threshold;
    std::optional<std::size_t> run_threads;
    auto* run = app.add_subcommand("run", "Whole pipeline from a config file");
    run->add_option("config", run_config, "Pipeline config JSON")->required();
    run->add_option("--out", run_out, "Output directory (overrides config)");
    run->add_option("--threshold", run_threshold, "Head threshold (overrides config)");
    run->add_option("--threads", run_threads, "Worker cap (overrides config)");

    // export
    std::string export_file, export_format = "gexf", export_out = "-", export_rules;
    double export_threshold = analysis::kDefaultGroupThreshold;
    auto* exp = app.add_subcommand("export", "Write a network in an exchange format");
    exp->add_option("network", export_file, "Network JSON")->required();
    exp->add_option("--format", export_format, "gexf | graphml | groups-csv | scores-csv")
        ->check(CLI::IsMember({"gexf", "graphml", "groups-csv", "scores-csv"}));
    exp->add_option("--threshold", export_threshold, "Head threshold for groups-csv");
    exp->add_option("--sensor-rules", export_rules, "Sensor term rules for groups-csv");
    exp->add_option("-o,--output", export_out, "Output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            wos::ParseOptions opts;
            opts.strict = ingest_strict;
            auto parsed = wos::parse_any(pipeline::read_file(ingest_file), ingest_label, opts);
            for (const auto& d : parsed.diagnostics)
                std::cerr << ingest_file << ":" << d.line << ": " << d.message << "\n";
            wos::Corpus corpus = std::move(parsed.corpus);
            if (!ingest_filter.empty()) {
                const auto criteria = wos::criteria_from_json(read_json(ingest_filter));
                criteria.validate();
                const std::size_t before = corpus.records.size();
                corpus = wos::filter_corpus(corpus, criteria);
                std::cerr << "kept " << corpus.records.size() << " of " << before << " records\n";
            }
            emit_json(ingest_out, wos::corpus_to_json(corpus));
        } else if (*normalize) {
            const auto lex = norm_rules.empty() ? lexicon::Lexicon() : lexicon::Lexicon::load(pipeline::read_file(norm_rules));
            const auto result = lexicon::normalize_corpus(lex, wos::corpus_from_json(read_json(norm_file)));
            for (const auto& d : result.dropped)
                std::cerr << "dropped '" << d.keyword << "' in " << d.record_id << ": " << d.reason << "\n";
            emit_json(norm_out, wos::corpus_to_json(result.corpus));
        } else if (*build) {
            auto g = graph::build_coword_graph(wos::corpus_from_json(read_json(build_file)));
            if (!keep_isolates) {
                const auto isolates = graph::isolated_nodes(g);
                for (const auto& label : isolates) std::cerr << "isolate removed: " << label << "\n";
                g = graph::remove_isolates(g);
            }
            emit_json(build_out, graph::graph_to_json(g));
        } else if (*reduce) {
            pathfinder::Options opts;
            opts.mode = pathfinder::parse_mode(reduce_mode);
            opts.tie = pathfinder::parse_tie(reduce_tie);
            opts.binarize = binarize;
            const auto net = pathfinder::mst_pathfinder(graph::graph_from_json(read_json(reduce_file)), opts);
            std::cerr << "edges " << net.input_edge_count << " -> " << net.network.edge_count() << "\n";
            emit_json(reduce_out, pathfinder::network_to_json(net));
        } else if (*analyze) {
            const auto rules = sensor_rules(analyze_rules);
            const analysis::BetweennessOptions bopts{analyze_weighted, threads_for(analyze_threads)};
            analysis::CorpusGroups sets;
            json groups_doc = json::object();
            for (const auto& f : analyze_files) {
                const auto net = pathfinder::network_from_json(read_json(f));
                std::string label = net.network.corpus_label;
                if (label.empty()) label = fs::path(f).stem().string();
                const auto scores = analysis::betweenness_centrality(net.network, bopts);
                auto groups = analysis::extract_groups(net.network, scores, analyze_threshold, rules);
                groups_doc[label] = analysis::groups_to_json(groups);
                sets.emplace_back(label, std::move(groups));
            }
            const auto matrix = analysis::build_sensor_matrix(sets);
            fs::create_directories(analyze_dir);
            pipeline::write_file(fs::path(analyze_dir) / "groups.json", groups_doc.dump(2) + "\n");
            pipeline::write_file(fs::path(analyze_dir) / "matrix.csv", exporting::export_sensor_matrix(matrix));
        } else if (*run) {
            auto config = pipeline::PipelineConfig::load(run_config);
            if (!run_out.empty()) config.output_dir = run_out;
            if (run_threshold) config.threshold = *run_threshold;
            if (run_threads) config.threads = *run_threads;
            config.validate();
            const auto report = pipeline::run_pipeline(config);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& c : report.corpora)
                std::cerr << c.label << ": " << c.records_filtered << " records, " << c.nodes << " nodes, "
                          << c.edges_before << " -> " << c.edges_after << " edges, " << c.group_count << " groups\n";
        } else if (*exp) {
            const auto net = pathfinder::network_from_json(read_json(export_file));
            const auto scores = analysis::betweenness_centrality(net.network, {false, threads_for(std::nullopt)});
            const auto& freq = net.network.nodes();
            const analysis::FrequencyMap frequencies(freq.begin(), freq.end());
            std::string out;
            if (export_format == "gexf") {
                out = exporting::export_gexf(net.network, scores, frequencies);
            } else if (export_format == "graphml") {
                out = exporting::export_graphml(net.network, scores, frequencies);
            } else if (export_format == "scores-csv") {
                out = exporting::export_scores(scores, frequencies);
            } else {
                const auto groups = analysis::extract_groups(net.network, scores, export_threshold, sensor_rules(export_rules));
                out = exporting::export_group_tables(groups);
            }
            emit(export_out, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
