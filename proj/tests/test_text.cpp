#include <gtest/gtest.h>

#include "coword/text.hpp"

using namespace coword::text;

TEST(Text, Utf8Validation) {
    EXPECT_FALSE(find_invalid_utf8("plain"));
    EXPECT_FALSE(find_invalid_utf8("caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80"));
    EXPECT_EQ(find_invalid_utf8("ab\xC3\x28"), 2u);
    EXPECT_EQ(find_invalid_utf8("\xC0\xAF"), 0u);       // overlong
    EXPECT_EQ(find_invalid_utf8("\xED\xA0\x80"), 0u);   // surrogate
    EXPECT_EQ(find_invalid_utf8("x\xE2\x82"), 1u);      // truncated
    EXPECT_EQ(sanitize_utf8("a\xFF" "b"), "a\xEF\xBF\xBD" "b");
}

TEST(Text, CaseFold) {
    EXPECT_EQ(case_fold("BioSensor"), "biosensor");
    EXPECT_EQ(case_fold("ÉLAN"), "élan");
    EXPECT_EQ(case_fold("ς"), case_fold("Σ"));
    EXPECT_EQ(to_upper("électrode"), "ÉLECTRODE");
    EXPECT_EQ(code_point_count("héllo"), 5u);
}

TEST(Text, Whitespace) {
    EXPECT_EQ(collapse_whitespace("  a \t\r\n b  "), "a b");
    EXPECT_EQ(trim("  x "), "x");
    EXPECT_EQ(split_trimmed(" a ; ;b;", ';'), (std::vector<std::string>{"a", "b"}));
    EXPECT_TRUE(iequals_ascii("SCI-Expanded", "sci-expanded"));
}

TEST(Text, Csv) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    const auto rows = parse_csv("# c\nk,p,r\r\n\"x,1\",\"line\nbreak\",\"q\"\"\"\n", '#');
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"x,1", "line\nbreak", "q\""}));
    EXPECT_THROW(parse_csv("\"open"), std::invalid_argument);
}

TEST(Text, Xml) { EXPECT_EQ(xml_escape("a<b>&\"'"), "a&lt;b&gt;&amp;&quot;&apos;"); }

TEST(Text, Doubles) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(std::stod(format_double(2.0 / 3.0)), 2.0 / 3.0);
}
