#include "coword/export.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "coword/error.hpp"
#include "coword/text.hpp"

namespace coword::exporting {

namespace {

std::int64_t frequency_of(const analysis::FrequencyMap& f, const std::string& label) {
    const auto it = f.find(label);
    return it == f.end() ? 0 : it->second;
}

double score_of(const analysis::CentralityScores& s, const std::string& label) {
    const auto it = s.find(label);
    return it == s.end() ? 0.0 : it->second;
}

// Shared by the GEXF and GraphML writers: ids are the label order.
struct NumberedGraph {
    std::map<std::string, std::size_t> id;
    explicit NumberedGraph(const graph::CoWordGraph& g) {
        for (const auto& [label, df] : g.nodes()) id.emplace(label, id.size());
    }
};

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::FormatError, "bad number '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::FormatError, "bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string export_gexf(const graph::CoWordGraph& network, const analysis::CentralityScores& scores,
                        const analysis::FrequencyMap& frequencies) {
    const NumberedGraph ids(network);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" xmlns:viz=\"http://www.gexf.net/1.2draft/viz\" "
           "version=\"1.2\">\n";
    out += "  <meta>\n    <creator>coword_atlas</creator>\n";
    out += "    <description>" + text::xml_escape(network.corpus_label) + "</description>\n  </meta>\n";
    out += "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
    out += "    <attributes class=\"node\">\n";
    out += "      <attribute id=\"0\" title=\"doc_frequency\" type=\"integer\"/>\n";
    out += "      <attribute id=\"1\" title=\"betweenness\" type=\"double\"/>\n";
    out += "    </attributes>\n";
    out += "    <nodes>\n";
    for (const auto& [label, df] : network.nodes()) {
        const std::string bc = text::format_double(score_of(scores, label));
        out += "      <node id=\"" + std::to_string(ids.id.at(label)) + "\" label=\"" + text::xml_escape(label) +
               "\">\n";
        out += "        <attvalues>\n";
        out += "          <attvalue for=\"0\" value=\"" + std::to_string(frequency_of(frequencies, label)) + "\"/>\n";
        out += "          <attvalue for=\"1\" value=\"" + bc + "\"/>\n";
        out += "        </attvalues>\n";
        out += "        <viz:size value=\"" + bc + "\"/>\n";
        out += "      </node>\n";
    }
    out += "    </nodes>\n";
    out += "    <edges>\n";
    std::size_t edge_id = 0;
    for (const auto& [key, w] : network.edges()) {
        out += "      <edge id=\"" + std::to_string(edge_id++) + "\" source=\"" +
               std::to_string(ids.id.at(key.first)) + "\" target=\"" + std::to_string(ids.id.at(key.second)) +
               "\" weight=\"" + std::to_string(w) + "\"/>\n";
    }
    out += "    </edges>\n";
    out += "  </graph>\n";
    out += "</gexf>\n";
    return out;
}

GexfContents read_gexf(std::string_view xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, tree);
    } catch (const pt::ptree_error& e) {
        throw Error(ErrorKind::FormatError, std::string("GEXF: ") + e.what());
    }

    GexfContents out;
    try {
        const auto& root = tree.get_child("gexf");
        out.network.corpus_label = root.get<std::string>("meta.description", "");
        const auto& g = root.get_child("graph");
        std::map<std::string, std::string> attr_title;
        if (const auto attrs = g.get_child_optional("attributes"))
            for (const auto& [name, a] : *attrs)
                if (name == "attribute") attr_title[a.get<std::string>("<xmlattr>.id")] = a.get<std::string>("<xmlattr>.title");

        std::map<std::string, std::string> label_of;
        if (const auto nodes = g.get_child_optional("nodes")) {
            for (const auto& [name, node] : *nodes) {
                if (name != "node") continue;
                const auto id = node.get<std::string>("<xmlattr>.id");
                const auto label = node.get<std::string>("<xmlattr>.label", id);
                std::int64_t df = 0;
                double bc = 0.0;
                if (const auto vals = node.get_child_optional("attvalues"))
                    for (const auto& [vn, v] : *vals) {
                        if (vn != "attvalue") continue;
                        const auto title = attr_title[v.get<std::string>("<xmlattr>.for")];
                        const auto value = v.get<std::string>("<xmlattr>.value");
                        if (title == "doc_frequency") df = parse_int(value);
                        if (title == "betweenness") bc = parse_double(value);
                    }
                label_of[id] = label;
                out.network.set_node(label, df);
                out.scores[label] = bc;
            }
        }
        if (const auto edges = g.get_child_optional("edges")) {
            for (const auto& [name, edge] : *edges) {
                if (name != "edge") continue;
                const auto& a = label_of.at(edge.get<std::string>("<xmlattr>.source"));
                const auto& b = label_of.at(edge.get<std::string>("<xmlattr>.target"));
                out.network.set_edge(a, b, parse_int(edge.get<std::string>("<xmlattr>.weight", "1")));
            }
        }
    } catch (const pt::ptree_error& e) {
        throw Error(ErrorKind::FormatError, std::string("GEXF: ") + e.what());
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::FormatError, "GEXF: edge refers to an unknown node");
    }
    return out;
}

std::string export_graphml(const graph::CoWordGraph& network, const analysis::CentralityScores& scores,
                           const analysis::FrequencyMap& frequencies) {
    const NumberedGraph ids(network);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    out += "  <key id=\"doc_frequency\" for=\"node\" attr.name=\"doc_frequency\" attr.type=\"long\"/>\n";
    out += "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n";
    out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    out += "  <graph id=\"" + text::xml_escape(network.corpus_label) + "\" edgedefault=\"undirected\">\n";
    for (const auto& [label, df] : network.nodes()) {
        out += "    <node id=\"n" + std::to_string(ids.id.at(label)) + "\">\n";
        out += "      <data key=\"label\">" + text::xml_escape(label) + "</data>\n";
        out += "      <data key=\"doc_frequency\">" + std::to_string(frequency_of(frequencies, label)) + "</data>\n";
        out += "      <data key=\"betweenness\">" + text::format_double(score_of(scores, label)) + "</data>\n";
        out += "    </node>\n";
    }
    std::size_t edge_id = 0;
    for (const auto& [key, w] : network.edges()) {
        out += "    <edge id=\"e" + std::to_string(edge_id++) + "\" source=\"n" + std::to_string(ids.id.at(key.first)) +
               "\" target=\"n" + std::to_string(ids.id.at(key.second)) + "\">\n";
        out += "      <data key=\"weight\">" + std::to_string(w) + "</data>\n";
        out += "    </edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string export_group_tables(const std::vector<analysis::Group>& groups) {
    std::string out = "group_index,core_keyword,top5_keywords,related_sensors\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        out += std::to_string(i + 1) + "," + text::csv_field(g.head) + "," +
               text::csv_field(text::join(g.top_keywords, "; ")) + "," +
               text::csv_field(text::join(g.sensors, "; ")) + "\n";
    }
    return out;
}

std::string export_scores(const analysis::CentralityScores& scores, const analysis::FrequencyMap& frequencies) {
    std::string out = "label,doc_frequency,betweenness\n";
    for (const auto& [label, bc] : scores)
        out += text::csv_field(label) + "," + std::to_string(frequency_of(frequencies, label)) + "," +
               text::format_double(bc) + "\n";
    return out;
}

std::string export_sensor_matrix(const analysis::SensorMatrix& matrix) {
    std::string out = "sensor";
    for (const auto& c : matrix.corpora) out += "," + text::csv_field(c);
    out += "\n";
    for (std::size_t r = 0; r < matrix.sensors.size(); ++r) {
        out += text::csv_field(matrix.sensors[r]);
        for (const bool p : matrix.present[r]) out += p ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

}  // namespace coword::exporting
