#include "coword/wos.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_set>

#include "coword/error.hpp"
#include "coword/text.hpp"

namespace coword::wos {

namespace {

using Fields = std::vector<std::pair<std::string, std::vector<std::string>>>;

constexpr std::string_view kBom = "\xEF\xBB\xBF";
constexpr std::string_view kSynthPrefix = "REC-";

bool is_tag_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

// Two-letter field tag at line start, followed by a space or end of line.
bool parse_tag_line(std::string_view line, std::string& tag, std::string& value) {
    if (line.size() < 2 || !(line[0] >= 'A' && line[0] <= 'Z') || !is_tag_char(line[1]))
        return false;
    if (line.size() > 2 && line[2] != ' ') return false;
    tag.assign(line.substr(0, 2));
    value.assign(line.size() > 2 ? text::trim(line.substr(3)) : std::string_view{});
    return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::optional<int> parse_year(std::string_view s) {
    s = text::trim(s);
    if (s.size() != 4) return std::nullopt;
    int year = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), year);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    if (year < 1900 || year > 2100) return std::nullopt;
    return year;
}

// "Science Citation Index Expanded (SCI-EXPANDED)" -> "SCI-EXPANDED".
std::string index_abbreviation(std::string_view value) {
    value = text::trim(value);
    if (!value.empty() && value.back() == ')') {
        const auto open = value.rfind('(');
        if (open != std::string_view::npos && open + 2 < value.size())
            return std::string(text::trim(value.substr(open + 1, value.size() - open - 2)));
    }
    return std::string(value);
}

class CorpusBuilder {
public:
    CorpusBuilder(std::string label, const ParseOptions& options,
                  std::vector<Diagnostic>& diagnostics)
        : options_(options), diagnostics_(diagnostics) {
        if (label.empty()) throw Error(ErrorKind::InvalidArgument, "corpus label must not be empty");
        corpus_.corpus_label = std::move(label);
    }

    void malformed(std::size_t line, const std::string& message) {
        if (options_.strict) throw Error(ErrorKind::MalformedRecord, message, line);
        diagnostics_.push_back({line, message});
    }

    void add(const Fields& fields, std::size_t start_line) {
        WosRecord rec;
        std::string ut;
        for (const auto& [tag, values] : fields) {
            if (tag == "UT") {
                ut = text::collapse_whitespace(text::join(values, " "));
            } else if (tag == "DT") {
                rec.doc_type = text::collapse_whitespace(text::join(values, " "));
            } else if (tag == "TI") {
                rec.title = text::collapse_whitespace(text::join(values, " "));
            } else if (tag == "LA") {
                rec.language = text::collapse_whitespace(text::join(values, " "));
            } else if (tag == "PY") {
                const std::string raw = text::join(values, " ");
                rec.pub_year = parse_year(raw);
                if (!rec.pub_year) {
                    diagnostics_.push_back({start_line, "invalid PY value '" + raw + "' kept as extra"});
                    rec.extras["PY"] = values;
                }
            } else if (tag == "WE") {
                if (values.empty()) continue;
                rec.source_index = index_abbreviation(values.front());
                if (values.size() > 1)
                    rec.extras["WE"].assign(values.begin() + 1, values.end());
            } else if (tag == "DE") {
                for (auto& kw : text::split_trimmed(text::join(values, " "), ';'))
                    rec.author_keywords.push_back(text::collapse_whitespace(kw));
            } else {
                auto& slot = rec.extras[tag];
                slot.insert(slot.end(), values.begin(), values.end());
            }
        }

        if (!ut.empty()) {
            if (!seen_ut_.insert(ut).second) {
                diagnostics_.push_back({start_line, "duplicate UT " + ut + " skipped"});
                return;
            }
            rec.record_id = ut;
        } else {
            const auto key = std::make_pair(rec.title, rec.pub_year.value_or(0));
            if (!seen_title_year_.insert(key).second) {
                diagnostics_.push_back({start_line, "duplicate title/year record skipped"});
                return;
            }
            std::size_t n = corpus_.records.size() + 1;
            std::string id;
            do {
                id = std::string(kSynthPrefix) + std::to_string(n++);
            } while (seen_ut_.count(id) != 0);
            rec.record_id = std::move(id);
        }
        seen_ut_.insert(rec.record_id);
        corpus_.records.push_back(std::move(rec));
    }

    Corpus finish() { return std::move(corpus_); }

private:
    const ParseOptions& options_;
    std::vector<Diagnostic>& diagnostics_;
    Corpus corpus_;
    std::unordered_set<std::string> seen_ut_;
    std::set<std::pair<std::string, int>> seen_title_year_;
};

std::string prepare_text(std::string_view text, const ParseOptions& options,
                         std::vector<Diagnostic>& diagnostics) {
    if (text.substr(0, kBom.size()) == kBom) text.remove_prefix(kBom.size());
    if (const auto bad = text::find_invalid_utf8(text)) {
        const auto line = static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(*bad), '\n')) +
                          1;
        if (options.strict)
            throw Error(ErrorKind::EncodingError,
                        "invalid UTF-8 at byte offset " + std::to_string(*bad), line);
        diagnostics.push_back({line, "invalid UTF-8 replaced with U+FFFD"});
        return text::sanitize_utf8(text);
    }
    return std::string(text);
}

}  // namespace

ParseResult parse_wos_export(std::string_view input, std::string corpus_label,
                             const ParseOptions& options) {
    ParseResult result;
    const std::string text = prepare_text(input, options, result.diagnostics);
    CorpusBuilder builder(std::move(corpus_label), options, result.diagnostics);

    bool in_record = false;
    bool skipping_field = false;  // a rejected tag line swallows its continuations
    std::size_t record_line = 0;
    Fields fields;
    std::string tag;
    std::string value;

    const auto lines = split_lines(text);
    std::size_t lineno = 0;
    for (; lineno < lines.size(); ++lineno) {
        const std::string_view line = lines[lineno];
        const std::size_t here = lineno + 1;
        if (text::trim(line).empty()) continue;

        if (line.substr(0, 3) == "   ") {
            if (skipping_field) continue;
            if (!in_record || fields.empty()) {
                builder.malformed(here, "continuation line outside a field");
                continue;
            }
            fields.back().second.emplace_back(text::trim(line));
            continue;
        }
        if (!parse_tag_line(line, tag, value)) {
            builder.malformed(here, "unrecognized line");
            skipping_field = true;
            continue;
        }
        skipping_field = false;

        if (tag == "EF") {
            if (in_record) {
                builder.malformed(here, "end of file inside record starting at line " +
                                            std::to_string(record_line));
                in_record = false;
            }
            break;
        }
        if (tag == "PT") {
            if (in_record)
                builder.malformed(here, "record starting at line " + std::to_string(record_line) +
                                            " has no ER");
            in_record = true;
            record_line = here;
            fields.clear();
            fields.push_back({"PT", {value}});
            continue;
        }
        if (tag == "ER") {
            if (!in_record) {
                builder.malformed(here, "ER without a record");
                continue;
            }
            builder.add(fields, record_line);
            in_record = false;
            fields.clear();
            continue;
        }
        if (!in_record) {
            if (tag == "FN" || tag == "VR") continue;  // file header
            builder.malformed(here, "tag line before any record start");
            skipping_field = true;
            continue;
        }
        std::vector<std::string> values;
        if (!value.empty()) values.push_back(value);
        fields.push_back({tag, std::move(values)});
    }
    if (in_record)
        builder.malformed(lineno, "end of input inside record starting at line " +
                                      std::to_string(record_line));

    result.corpus = builder.finish();
    return result;
}

ParseResult parse_wos_tab_delimited(std::string_view input, std::string corpus_label,
                                    const ParseOptions& options) {
    ParseResult result;
    const std::string text = prepare_text(input, options, result.diagnostics);
    CorpusBuilder builder(std::move(corpus_label), options, result.diagnostics);

    const auto lines = split_lines(text);
    std::vector<std::string> header;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (text::trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find('\t', start);
            cells.emplace_back(text::trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        if (header.empty()) {
            header = std::move(cells);
            continue;
        }
        if (cells.size() > header.size()) {
            builder.malformed(i + 1, "row has more columns than the header");
            continue;
        }
        Fields fields;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty() || header[c].empty()) continue;
            if (header[c] == "WE") {
                // Multiple indices are ';'-joined in this format.
                fields.push_back({"WE", text::split_trimmed(cells[c], ';')});
            } else {
                fields.push_back({header[c], {cells[c]}});
            }
        }
        builder.add(fields, i + 1);
    }
    result.corpus = builder.finish();
    return result;
}

ParseResult parse_any(std::string_view text, std::string corpus_label,
                      const ParseOptions& options) {
    std::string_view probe = text;
    if (probe.substr(0, kBom.size()) == kBom) probe.remove_prefix(kBom.size());
    const auto first = probe.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos) {
        const auto eol = probe.find('\n', first);
        const auto line = probe.substr(first, eol == std::string_view::npos ? std::string_view::npos : eol - first);
        if (line.substr(0, 3) == "PT\t")
            return parse_wos_tab_delimited(text, std::move(corpus_label), options);
    }
    return parse_wos_export(text, std::move(corpus_label), options);
}

std::string write_wos_export(const Corpus& corpus) {
    std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
    auto field = [&out](std::string_view tag, const std::vector<std::string>& values) {
        if (values.empty()) {
            out.append(tag).push_back('\n');
            return;
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            out += i == 0 ? std::string(tag) + " " : std::string("   ");
            out += values[i];
            out.push_back('\n');
        }
    };
    for (const auto& rec : corpus.records) {
        const auto pt = rec.extras.find("PT");
        field("PT", pt != rec.extras.end() ? pt->second : std::vector<std::string>{"J"});
        if (!rec.title.empty()) field("TI", {rec.title});
        if (!rec.language.empty()) field("LA", {rec.language});
        if (!rec.doc_type.empty()) field("DT", {rec.doc_type});
        if (!rec.author_keywords.empty()) field("DE", {text::join(rec.author_keywords, "; ")});
        if (!rec.source_index.empty()) {
            std::vector<std::string> we{rec.source_index};
            if (const auto more = rec.extras.find("WE"); more != rec.extras.end())
                we.insert(we.end(), more->second.begin(), more->second.end());
            field("WE", we);
        }
        if (rec.pub_year) field("PY", {std::to_string(*rec.pub_year)});
        for (const auto& [tag, values] : rec.extras) {
            if (tag == "PT" || tag == "WE") continue;
            if (tag == "PY" && rec.pub_year) continue;
            field(tag, values);
        }
        if (rec.record_id.rfind(kSynthPrefix, 0) != 0) field("UT", {rec.record_id});
        out += "ER\n\n";
    }
    out += "EF\n";
    return out;
}

void FilterCriteria::validate() const {
    if (year_range && year_range->min > year_range->max)
        throw Error(ErrorKind::InvalidArgument,
                    "year range " + std::to_string(year_range->min) + ".." +
                        std::to_string(year_range->max) + " is inverted");
}

FilterCriteria FilterCriteria::reference_query() {
    FilterCriteria c;
    c.doc_types = {"Article"};
    c.languages = {"English"};
    c.year_range = YearRange{1991, 2021};
    c.indices = {"SCI-EXPANDED"};
    return c;
}

namespace {

bool field_matches(const std::string& value, const std::set<std::string>& allowed) {
    if (allowed.empty()) return true;
    for (const auto& part : text::split_trimmed(value, ';'))
        for (const auto& a : allowed)
            if (text::iequals_ascii(part, a)) return true;
    return false;
}

}  // namespace

bool matches(const WosRecord& record, const FilterCriteria& criteria) {
    if (!field_matches(record.doc_type, criteria.doc_types)) return false;
    if (!field_matches(record.language, criteria.languages)) return false;
    if (!field_matches(record.source_index, criteria.indices)) {
        // Secondary index lines count too.
        bool hit = false;
        if (const auto more = record.extras.find("WE"); more != record.extras.end())
            for (const auto& v : more->second)
                hit = hit || field_matches(index_abbreviation(v), criteria.indices);
        if (!hit) return false;
    }
    if (criteria.year_range) {
        if (!record.pub_year) return false;
        if (*record.pub_year < criteria.year_range->min || *record.pub_year > criteria.year_range->max)
            return false;
    }
    if (criteria.require_keywords && record.author_keywords.empty()) return false;
    return true;
}

Corpus filter_corpus(const Corpus& corpus, const FilterCriteria& criteria) {
    criteria.validate();
    Corpus out;
    out.corpus_label = corpus.corpus_label;
    std::copy_if(corpus.records.begin(), corpus.records.end(), std::back_inserter(out.records),
                 [&](const WosRecord& r) { return matches(r, criteria); });
    return out;
}

FilterCriteria criteria_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::FormatError, "filter criteria must be a JSON object");
    FilterCriteria c;
    try {
        auto read_set = [&j](const char* key, std::set<std::string>& dst) {
            if (j.contains(key)) dst = j.at(key).get<std::set<std::string>>();
        };
        read_set("doc_types", c.doc_types);
        read_set("languages", c.languages);
        read_set("indices", c.indices);
        const bool has_min = j.contains("year_min") && !j.at("year_min").is_null();
        const bool has_max = j.contains("year_max") && !j.at("year_max").is_null();
        if (has_min || has_max) {
            c.year_range = YearRange{has_min ? j.at("year_min").get<int>() : 0,
                                     has_max ? j.at("year_max").get<int>() : 9999};
        }
        if (j.contains("require_keywords")) c.require_keywords = j.at("require_keywords").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::FormatError, std::string("filter criteria: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json criteria_to_json(const FilterCriteria& c) {
    nlohmann::json j;
    j["doc_types"] = c.doc_types;
    j["languages"] = c.languages;
    j["indices"] = c.indices;
    j["year_min"] = c.year_range ? nlohmann::json(c.year_range->min) : nlohmann::json(nullptr);
    j["year_max"] = c.year_range ? nlohmann::json(c.year_range->max) : nlohmann::json(nullptr);
    j["require_keywords"] = c.require_keywords;
    return j;
}

nlohmann::json corpus_to_json(const Corpus& corpus) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : corpus.records) {
        nlohmann::json jr;
        jr["record_id"] = r.record_id;
        jr["doc_type"] = r.doc_type;
        jr["title"] = r.title;
        jr["language"] = r.language;
        jr["pub_year"] = r.pub_year ? nlohmann::json(*r.pub_year) : nlohmann::json(nullptr);
        jr["source_index"] = r.source_index;
        jr["author_keywords"] = r.author_keywords;
        jr["extras"] = r.extras;
        records.push_back(std::move(jr));
    }
    return {{"corpus_label", corpus.corpus_label}, {"records", std::move(records)}};
}

Corpus corpus_from_json(const nlohmann::json& j) {
    Corpus c;
    try {
        c.corpus_label = j.at("corpus_label").get<std::string>();
        std::unordered_set<std::string> ids;
        for (const auto& jr : j.at("records")) {
            WosRecord r;
            r.record_id = jr.at("record_id").get<std::string>();
            r.doc_type = jr.value("doc_type", "");
            r.title = jr.value("title", "");
            r.language = jr.value("language", "");
            if (jr.contains("pub_year") && !jr.at("pub_year").is_null()) {
                r.pub_year = jr.at("pub_year").get<int>();
                if (*r.pub_year < 1900 || *r.pub_year > 2100)
                    throw Error(ErrorKind::FormatError, "pub_year out of range in " + r.record_id);
            }
            r.source_index = jr.value("source_index", "");
            r.author_keywords = jr.value("author_keywords", std::vector<std::string>{});
            if (jr.contains("extras"))
                r.extras = jr.at("extras").get<std::map<std::string, std::vector<std::string>>>();
            if (!ids.insert(r.record_id).second)
                throw Error(ErrorKind::FormatError, "duplicate record_id " + r.record_id);
            c.records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::FormatError, std::string("corpus JSON: ") + e.what());
    }
    if (c.corpus_label.empty()) throw Error(ErrorKind::FormatError, "corpus_label is empty");
    return c;
}

}  // namespace coword::wos
