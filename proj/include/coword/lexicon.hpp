#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coword/wos.hpp"

namespace coword::lexicon {

enum class RuleKind { case_fold, hyphen_fold, plural_fold, synonym_merge, abbreviation_expand };

std::string_view to_string(RuleKind kind);

struct NormalizationRule {
    RuleKind kind = RuleKind::synonym_merge;
    // Exact term for synonym/abbreviation rules; suffix for plural_fold rules.
    std::string pattern;
    std::string replacement;
};

// Immutable keyword normalizer. A keyword passes through, in order:
//   1. case fold and whitespace collapse,
//   2. hyphen fold: letter-letter hyphens are dropped only when the joined
//      form is a term some rule mentions ("bio-sensor" -> "biosensor"),
//   3. plural fold of the final word (rule suffixes, then the trailing "s"),
//   4. exact synonym/abbreviation lookups, each replacement re-entering 1-3.
// The whole pass repeats until the keyword stops changing.
class Lexicon {
public:
    // Built-in structural rules only.
    Lexicon();

    // Rules CSV with header `kind,pattern,replacement`; '#' lines are comments.
    // Besides the rule kinds, `plural_exception,<word>,` adds a word that is
    // never de-pluralized. Throws Error{InvalidRule | DuplicatePattern | RuleCycle}.
    static Lexicon load(std::string_view rules_csv);

    // Throws Error{EmptyAfterNormalization} when nothing is left.
    std::string normalize(std::string_view raw) const;

    const std::vector<NormalizationRule>& rules() const { return rules_; }
    const std::set<std::string>& plural_exceptions() const { return plural_exceptions_; }

private:
    std::string structural(std::string_view s) const;
    std::string hyphen_fold(const std::string& s) const;
    std::string plural_fold(const std::string& s) const;
    std::string fold_final_word(const std::string& word) const;
    // Returns false when the lookup chain does not settle within the pass limit.
    bool resolve(std::string& s) const;
    std::string pass(std::string_view s) const;

    std::vector<NormalizationRule> rules_;
    std::set<std::string> plural_exceptions_;
    std::vector<std::pair<std::string, std::string>> plural_suffixes_;
    // Structurally folded pattern -> raw replacement; first rule in file order wins.
    std::map<std::string, std::string> lookup_;
    // Terms named by any rule, case folded and plural folded; hyphen-free.
    std::set<std::string> vocabulary_;
};

// Words that the trailing-"s" rule must leave alone.
const std::set<std::string>& default_plural_exceptions();

struct DroppedKeyword {
    std::string record_id;
    std::string keyword;
    std::string reason;
};

struct NormalizedCorpus {
    wos::Corpus corpus;
    std::vector<DroppedKeyword> dropped;
};

// Normalizes every keyword and removes within-record duplicates (first kept).
NormalizedCorpus normalize_corpus(const Lexicon& lexicon, const wos::Corpus& corpus);

}  // namespace coword::lexicon
