#include <gtest/gtest.h>

#include <random>

#include "coword/error.hpp"
#include "coword/lexicon.hpp"
#include "coword/pipeline.hpp"
#include "coword/text.hpp"
#include "support.hpp"

using namespace coword;
using namespace coword::lexicon;

namespace {

const Lexicon& seed() {
    static const Lexicon lex = Lexicon::load(pipeline::read_file(support::data_dir() / "lexicon_rules.csv"));
    return lex;
}

ErrorKind load_error(const std::string& csv) {
    try {
        Lexicon::load(csv);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::IoError;  // sentinel: nothing thrown
}

}  // namespace

TEST(Lexicon, NamedExamples) {
    EXPECT_EQ(seed().normalize("bio-sensor"), "biosensor");
    EXPECT_EQ(seed().normalize("Computers"), "computer");
    EXPECT_EQ(seed().normalize("biosensor"), "biosensor");
    EXPECT_EQ(seed().normalize("AMPK"), "amp-activated protein kinase");
}

TEST(Lexicon, HyphenKeptUnlessRuleMentionsJoinedForm) {
    EXPECT_EQ(seed().normalize("MCF-7 cancer cells"), "mcf-7 cancer cell");
    EXPECT_EQ(seed().normalize("Label-Free"), "label-free");
    EXPECT_EQ(seed().normalize("BIO-SENSORS"), "biosensor");
    // Built-in rules alone know no joined forms.
    EXPECT_EQ(Lexicon().normalize("bio-sensor"), "bio-sensor");
}

TEST(Lexicon, PluralFold) {
    const Lexicon lex;
    EXPECT_EQ(lex.normalize("Gold Nanoparticles"), "gold nanoparticle");
    EXPECT_EQ(lex.normalize("species"), "species");
    EXPECT_EQ(lex.normalize("Stress"), "stress");
    EXPECT_EQ(lex.normalize("Apoptosis"), "apoptosis");
    EXPECT_EQ(lex.normalize("virus"), "virus");
    EXPECT_EQ(lex.normalize("gas"), "gas");       // too short to fold
    EXPECT_EQ(lex.normalize("CMOS"), "cmos");     // acronym exception
    EXPECT_EQ(lex.normalize("sensors array"), "sensors array");  // final word only
    EXPECT_EQ(seed().normalize("Antibodies"), "antibody");
}

TEST(Lexicon, WhitespaceCollapsed) {
    EXPECT_EQ(Lexicon().normalize("  breast \t  cancer "), "breast cancer");
}

TEST(Lexicon, UnicodeCaseFold) {
    const Lexicon lex;
    EXPECT_EQ(lex.normalize("ÉLECTRODE"), lex.normalize("électrode"));
    EXPECT_EQ(lex.normalize("ΣΕΝΣΟΡ"), lex.normalize("σενσορ"));
}

TEST(Lexicon, EmptyAfterNormalization) {
    try {
        Lexicon().normalize("   ");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyAfterNormalization);
    }
}

TEST(Lexicon, EmptyFileHasOnlyBuiltIns) {
    for (const char* src : {"", "kind,pattern,replacement\n", "# nothing here\n"}) {
        const auto lex = Lexicon::load(src);
        ASSERT_EQ(lex.rules().size(), 3u);
        EXPECT_EQ(lex.rules()[0].kind, RuleKind::case_fold);
        EXPECT_EQ(lex.rules()[1].kind, RuleKind::hyphen_fold);
        EXPECT_EQ(lex.rules()[2].kind, RuleKind::plural_fold);
    }
}

TEST(Lexicon, LoadsAmpkRule) {
    const auto lex = Lexicon::load("kind,pattern,replacement\nabbreviation_expand,ampk,amp-activated protein kinase\n");
    EXPECT_EQ(lex.rules().size(), 4u);
    EXPECT_EQ(lex.normalize("Ampk"), "amp-activated protein kinase");
}

TEST(Lexicon, LoadErrors) {
    const std::string h = "kind,pattern,replacement\n";
    EXPECT_EQ(load_error(h + "synonym_merge,a,b\nsynonym_merge,b,a\n"), ErrorKind::RuleCycle);
    EXPECT_EQ(load_error(h + "synonym_merge,aa,bb\nsynonym_merge,bb,cc\nsynonym_merge,cc,aa\n"), ErrorKind::RuleCycle);
    EXPECT_EQ(load_error(h + "synonym_merge,foo,bar\nsynonym_merge,FOO,baz\n"), ErrorKind::DuplicatePattern);
    EXPECT_EQ(load_error(h + "case_fold,x,\n"), ErrorKind::InvalidRule);
    EXPECT_EQ(load_error(h + "stemming,x,y\n"), ErrorKind::InvalidRule);
    EXPECT_EQ(load_error(h + "synonym_merge,x,\n"), ErrorKind::InvalidRule);
    EXPECT_EQ(load_error(h + "synonym_merge,\"x,y\n"), ErrorKind::InvalidRule);
    // Same pattern under different kinds is not a duplicate.
    EXPECT_EQ(load_error(h + "synonym_merge,foo,bar\nabbreviation_expand,foo,baz\n"), ErrorKind::IoError);
}

TEST(Lexicon, ChainsResolve) {
    const auto lex = Lexicon::load("kind,pattern,replacement\nsynonym_merge,a1,b1\nsynonym_merge,b1,c1\n");
    EXPECT_EQ(lex.normalize("A1"), "c1");
    EXPECT_EQ(lex.normalize("b1"), "c1");
}

TEST(Lexicon, QuotedCommaInPattern) {
    const auto lex = Lexicon::load("kind,pattern,replacement\nsynonym_merge,\"2,4-dinitrophenol\",dnp compound\n");
    EXPECT_EQ(lex.normalize("2,4-Dinitrophenol"), "dnp compound");
}

TEST(Lexicon, OverlappingPatternsResolvedByFileOrder) {
    const auto first = Lexicon::load("kind,pattern,replacement\nsynonym_merge,foo,bar\nabbreviation_expand,foo,baz\n");
    const auto second = Lexicon::load("kind,pattern,replacement\nabbreviation_expand,foo,baz\nsynonym_merge,foo,bar\n");
    EXPECT_EQ(first.normalize("foo"), "bar");
    EXPECT_EQ(second.normalize("foo"), "baz");
}

TEST(Lexicon, IndependentOfOrderForDisjointPatterns) {
    const std::vector<std::string> rows = {"synonym_merge,bio-sensor,biosensor", "abbreviation_expand,ampk,amp-activated protein kinase",
                                           "abbreviation_expand,voc,volatile organic compound", "synonym_merge,au nps,gold nanoparticle"};
    std::vector<std::string> order = rows;
    const std::vector<std::string> probes = {"Bio-Sensors", "AMPK", "VOC", "Au NPs", "bio-sensor array", "voc sensor"};
    std::vector<std::string> expected;
    {
        std::string csv = "kind,pattern,replacement\n";
        for (const auto& r : order) csv += r + "\n";
        const auto lex = Lexicon::load(csv);
        for (const auto& p : probes) expected.push_back(lex.normalize(p));
    }
    std::sort(order.begin(), order.end());
    do {
        std::string csv = "kind,pattern,replacement\n";
        for (const auto& r : order) csv += r + "\n";
        const auto lex = Lexicon::load(csv);
        for (std::size_t i = 0; i < probes.size(); ++i) EXPECT_EQ(lex.normalize(probes[i]), expected[i]);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Lexicon, SeedReplacementsAreFixedPoints) {
    for (const auto& r : seed().rules()) {
        if (r.replacement.empty() || r.kind == RuleKind::plural_fold) continue;
        const auto once = seed().normalize(r.replacement);
        EXPECT_EQ(seed().normalize(once), once) << r.replacement;
    }
}

TEST(Lexicon, NormalizeCorpusExamples) {
    wos::Corpus c;
    c.corpus_label = "t";
    c.records.resize(3);
    c.records[0].record_id = "r1";
    c.records[0].author_keywords = {"Biosensor", "bio-sensor"};
    c.records[1].record_id = "r2";
    c.records[2].record_id = "r3";
    c.records[2].author_keywords = {"MCF-7 cancer cells"};
    const auto out = normalize_corpus(seed(), c);
    EXPECT_EQ(out.corpus.records[0].author_keywords, std::vector<std::string>{"biosensor"});
    EXPECT_TRUE(out.corpus.records[1].author_keywords.empty());
    EXPECT_EQ(out.corpus.records[2].author_keywords, std::vector<std::string>{"mcf-7 cancer cell"});
    EXPECT_TRUE(out.dropped.empty());
    EXPECT_EQ(out.corpus.records[0].record_id, "r1");
}

TEST(Lexicon, NormalizeCorpusDropsEmptyAndNeverGrows) {
    wos::Corpus c;
    c.corpus_label = "t";
    c.records.resize(1);
    c.records[0].record_id = "r1";
    c.records[0].author_keywords = {"Sensors", " ", "sensor", "SENSOR", "Gas Sensors"};
    const auto out = normalize_corpus(seed(), c);
    EXPECT_EQ(out.corpus.records[0].author_keywords, (std::vector<std::string>{"sensor", "gas sensor"}));
    ASSERT_EQ(out.dropped.size(), 1u);
    EXPECT_EQ(out.dropped[0].record_id, "r1");
}


TEST(LexiconProperty, IdempotentAndCaseInsensitive) {
    std::mt19937_64 rng(20240601);
    const Lexicon builtin;
    std::size_t checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::string raw = support::random_keyword(rng);
        for (const Lexicon* lex : {&seed(), &builtin}) {
            std::string once;
            try {
                once = lex->normalize(raw);
            } catch (const Error& e) {
                ASSERT_EQ(e.kind(), ErrorKind::EmptyAfterNormalization) << raw;
                EXPECT_THROW(lex->normalize(text::to_upper(raw)), Error);
                continue;
            }
            ASSERT_EQ(lex->normalize(once), once) << "raw: " << raw;
            ASSERT_EQ(lex->normalize(text::to_upper(raw)), once) << "raw: " << raw;
            ++checked;
        }
    }
    EXPECT_GT(checked, 19000u);
}
