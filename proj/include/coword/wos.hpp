#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

// Web of Science export ingestion: field-tagged plain text (canonical) and
// tab-delimited exports, plus the inclusion filters applied before analysis.
namespace coword::wos {

struct WosRecord {
    std::string record_id;      // UT accession, or synthesized "REC-<n>"
    std::string doc_type;       // DT, e.g. "Article"
    std::string title;          // TI
    std::string language;       // LA
    std::optional<int> pub_year;  // PY, within [1900, 2100]
    std::string source_index;   // WE abbreviation, e.g. "SCI-EXPANDED"
    std::vector<std::string> author_keywords;  // DE, split on ';'
    // Every other tag, values verbatim (one entry per physical line).
    std::map<std::string, std::vector<std::string>> extras;

    bool operator==(const WosRecord&) const = default;
};

struct Corpus {
    std::string corpus_label;
    std::vector<WosRecord> records;

    bool operator==(const Corpus&) const = default;
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not tied to a line
    std::string message;
};

struct ParseOptions {
    bool strict = false;
};

struct ParseResult {
    Corpus corpus;
    std::vector<Diagnostic> diagnostics;
};

// Field-tagged export ("PT ... ER ... EF"). Non-strict parsing never throws
// on content problems; it drops the offending lines or records and reports
// them. Strict parsing throws Error{MalformedRecord | EncodingError}.
ParseResult parse_wos_export(std::string_view text, std::string corpus_label,
                             const ParseOptions& options = {});

// Tab-delimited export: header row of field tags, one record per row.
ParseResult parse_wos_tab_delimited(std::string_view text, std::string corpus_label,
                                    const ParseOptions& options = {});

// Chooses the reader from the first non-empty line.
ParseResult parse_any(std::string_view text, std::string corpus_label,
                      const ParseOptions& options = {});

// Writes the field-tagged format back out. parse_wos_export(write_wos_export(c))
// reproduces every WosRecord field of c.
std::string write_wos_export(const Corpus& corpus);

struct YearRange {
    int min = 0;
    int max = 0;
};

struct FilterCriteria {
    // Empty sets place no constraint; matching is ASCII case-insensitive and a
    // multi-valued field ("Article; Early Access") matches if any part does.
    std::set<std::string> doc_types;
    std::set<std::string> languages;
    std::optional<YearRange> year_range;  // records without PY fail when set
    std::set<std::string> indices;
    bool require_keywords = false;

    // Throws InvalidArgument when year_range.min > year_range.max.
    void validate() const;

    // Articles, English, 1991-2021, SCI-EXPANDED.
    static FilterCriteria reference_query();
};

bool matches(const WosRecord& record, const FilterCriteria& criteria);
Corpus filter_corpus(const Corpus& corpus, const FilterCriteria& criteria);

FilterCriteria criteria_from_json(const nlohmann::json& j);
nlohmann::json criteria_to_json(const FilterCriteria& criteria);

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);

}  // namespace coword::wos
