#include "coword/lexicon.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "coword/error.hpp"
#include "coword/text.hpp"

namespace coword::lexicon {

namespace {

// Lookup chains and load-time cycle checks give up after this many passes.
constexpr int kMaxLookupPasses = 5;
// Outer fixed-point iteration over the complete pipeline.
constexpr int kMaxOuterPasses = 16;

bool is_letter_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

RuleKind parse_kind(std::string_view s, std::size_t row) {
    if (s == "case_fold") return RuleKind::case_fold;
    if (s == "hyphen_fold") return RuleKind::hyphen_fold;
    if (s == "plural_fold") return RuleKind::plural_fold;
    if (s == "synonym_merge") return RuleKind::synonym_merge;
    if (s == "abbreviation_expand") return RuleKind::abbreviation_expand;
    throw Error(ErrorKind::InvalidRule, "unknown rule kind '" + std::string(s) + "'", row);
}

}  // namespace

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::case_fold: return "case_fold";
        case RuleKind::hyphen_fold: return "hyphen_fold";
        case RuleKind::plural_fold: return "plural_fold";
        case RuleKind::synonym_merge: return "synonym_merge";
        case RuleKind::abbreviation_expand: return "abbreviation_expand";
    }
    return "unknown";
}

const std::set<std::string>& default_plural_exceptions() {
    static const std::set<std::string> words = {
        // Latin/Greek singulars and invariant nouns
        "species", "series", "diabetes", "herpes", "rabies", "ascites", "pancreas", "atlas",
        "bias", "canvas", "chaos", "ethos", "news", "lens", "thrips",
        // -ics disciplines
        "acoustics", "bioelectronics", "bioinformatics", "biomechanics", "biophysics",
        "chemometrics", "diagnostics", "dynamics", "economics", "electronics", "epigenetics",
        "ethics", "fluidics", "genetics", "genomics", "glycomics", "graphics", "hemodynamics",
        "informatics", "kinetics", "lipidomics", "logistics", "mathematics", "mechanics",
        "metabolomics", "microfluidics", "nanomechanics", "nanophotonics", "optics",
        "optoelectronics", "pharmacokinetics", "photonics", "physics", "plasmonics",
        "proteomics", "radiomics", "robotics", "spintronics", "statistics", "theranostics",
        "thermodynamics", "transcriptomics",
        // acronyms ending in "s"
        "aids", "sars", "cmos", "mems", "nems", "moems", "sers", "sims", "kras", "nras",
        "hras", "gc-ms", "lc-ms", "ms/ms",
    };
    return words;
}

Lexicon::Lexicon()
    : rules_{{RuleKind::case_fold, "", ""},
             {RuleKind::hyphen_fold, "", ""},
             {RuleKind::plural_fold, "s", ""}},
      plural_exceptions_(default_plural_exceptions()) {}

Lexicon Lexicon::load(std::string_view rules_csv) {
    std::vector<std::vector<std::string>> rows;
    try {
        rows = text::parse_csv(rules_csv, '#');
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::InvalidRule, e.what());
    }

    Lexicon lex;
    std::size_t first = 0;
    if (!rows.empty() && rows[0].size() >= 1 && text::trim(rows[0][0]) == "kind") first = 1;

    std::set<std::pair<RuleKind, std::string>> seen;
    std::vector<NormalizationRule> term_rules;
    for (std::size_t i = first; i < rows.size(); ++i) {
        auto& row = rows[i];
        row.resize(std::max<std::size_t>(row.size(), 3));
        if (row.size() > 3)
            throw Error(ErrorKind::InvalidRule, "expected 3 columns", i + 1);
        const std::string kind_name(text::trim(row[0]));
        const std::string pattern = text::collapse_whitespace(row[1]);
        const std::string replacement = text::collapse_whitespace(row[2]);

        if (kind_name == "plural_exception") {
            if (pattern.empty()) throw Error(ErrorKind::InvalidRule, "empty plural exception", i + 1);
            lex.plural_exceptions_.insert(text::case_fold(pattern));
            continue;
        }
        const RuleKind kind = parse_kind(kind_name, i + 1);
        if (kind == RuleKind::case_fold || kind == RuleKind::hyphen_fold)
            throw Error(ErrorKind::InvalidRule,
                        std::string(to_string(kind)) + " is built in and takes no rows", i + 1);
        if (pattern.empty())
            throw Error(ErrorKind::InvalidRule, "rule pattern is empty", i + 1);
        if (kind != RuleKind::plural_fold && replacement.empty())
            throw Error(ErrorKind::InvalidRule, "rule replacement is empty", i + 1);
        if (!seen.emplace(kind, text::case_fold(pattern)).second)
            throw Error(ErrorKind::DuplicatePattern,
                        std::string(to_string(kind)) + " pattern '" + pattern + "' repeated", i + 1);

        NormalizationRule rule{kind, pattern, replacement};
        if (kind == RuleKind::plural_fold) {
            lex.plural_suffixes_.emplace_back(text::case_fold(pattern), text::case_fold(replacement));
        } else {
            term_rules.push_back(rule);
        }
        lex.rules_.push_back(std::move(rule));
    }

    // Vocabulary first: it drives hyphen folding, which the lookup keys use.
    for (const auto& r : term_rules) {
        for (const auto* term : {&r.pattern, &r.replacement})
            lex.vocabulary_.insert(lex.plural_fold(text::collapse_whitespace(text::case_fold(*term))));
    }
    for (const auto& r : term_rules) {
        std::string key = lex.structural(r.pattern);
        if (key == lex.structural(r.replacement)) continue;  // absorbed by structural folding
        lex.lookup_.emplace(std::move(key), r.replacement);
    }
    for (const auto& r : term_rules) {
        std::string s = lex.structural(r.replacement);
        if (!lex.resolve(s))
            throw Error(ErrorKind::RuleCycle,
                        "replacement '" + r.replacement + "' does not settle within " +
                            std::to_string(kMaxLookupPasses) + " passes");
    }
    return lex;
}

std::string Lexicon::structural(std::string_view s) const {
    return plural_fold(hyphen_fold(text::collapse_whitespace(text::case_fold(s))));
}

std::string Lexicon::hyphen_fold(const std::string& s) const {
    std::string joined;
    joined.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '-' && i > 0 && i + 1 < s.size() && is_letter_byte(s[i - 1]) &&
            is_letter_byte(s[i + 1]))
            continue;
        joined.push_back(s[i]);
    }
    if (joined == s) return s;
    if (vocabulary_.count(joined) || vocabulary_.count(plural_fold(joined))) return joined;
    return s;
}

std::string Lexicon::fold_final_word(const std::string& word) const {
    if (plural_exceptions_.count(word) || text::code_point_count(word) <= 3) return word;
    for (const auto& [suffix, replacement] : plural_suffixes_) {
        if (word.size() > suffix.size() && text::ends_with(word, suffix))
            return word.substr(0, word.size() - suffix.size()) + replacement;
    }
    if (text::ends_with(word, "s") && !text::ends_with(word, "ss") &&
        !text::ends_with(word, "us") && !text::ends_with(word, "is"))
        return word.substr(0, word.size() - 1);
    return word;
}

std::string Lexicon::plural_fold(const std::string& s) const {
    const auto space = s.rfind(' ');
    const std::size_t start = space == std::string::npos ? 0 : space + 1;
    return s.substr(0, start) + fold_final_word(s.substr(start));
}

bool Lexicon::resolve(std::string& s) const {
    for (int pass = 0; pass < kMaxLookupPasses; ++pass) {
        const auto it = lookup_.find(s);
        if (it == lookup_.end()) return true;
        std::string next = structural(it->second);
        if (next == s) return true;
        s = std::move(next);
    }
    return lookup_.find(s) == lookup_.end();
}

std::string Lexicon::pass(std::string_view s) const {
    std::string out = structural(s);
    if (!resolve(out))
        throw Error(ErrorKind::RuleCycle, "lookup chain for '" + std::string(s) + "' does not settle");
    return out;
}

std::string Lexicon::normalize(std::string_view raw) const {
    if (text::trim(raw).empty())
        throw Error(ErrorKind::EmptyAfterNormalization, "keyword is empty");
    std::vector<std::string> seen{pass(raw)};
    for (int i = 0; i < kMaxOuterPasses; ++i) {
        std::string next = pass(seen.back());
        if (next == seen.back()) break;
        const auto hit = std::find(seen.begin(), seen.end(), next);
        if (hit != seen.end()) {
            // Structural stages oscillating: settle on the smallest member of
            // the cycle so the result is still a fixed point of normalize().
            return *std::min_element(hit, seen.end());
        }
        seen.push_back(std::move(next));
    }
    if (seen.back().empty())
        throw Error(ErrorKind::EmptyAfterNormalization,
                    "keyword '" + std::string(raw) + "' normalizes to nothing");
    return seen.back();
}

NormalizedCorpus normalize_corpus(const Lexicon& lexicon, const wos::Corpus& corpus) {
    NormalizedCorpus out;
    out.corpus.corpus_label = corpus.corpus_label;
    out.corpus.records.reserve(corpus.records.size());
    for (const auto& rec : corpus.records) {
        wos::WosRecord r = rec;
        r.author_keywords.clear();
        std::unordered_set<std::string> seen;
        for (const auto& kw : rec.author_keywords) {
            try {
                std::string canon = lexicon.normalize(kw);
                if (seen.insert(canon).second) r.author_keywords.push_back(std::move(canon));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::EmptyAfterNormalization) throw;
                out.dropped.push_back({rec.record_id, kw, e.what()});
            }
        }
        out.corpus.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace coword::lexicon
