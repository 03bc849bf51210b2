#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 and small string helpers shared by the record parser, the keyword
// normalizer and the exporters.
namespace coword::text {

// Byte offset of the first invalid UTF-8 sequence, or nullopt when valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view s);

// Replaces every invalid sequence with U+FFFD.
std::string sanitize_utf8(std::string_view s);

// Input must be valid UTF-8.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

// Simple (1:1) Unicode case folding: lower(upper(c)) per code point, so
// fold(x) == fold(upper(x)) for every x.
std::string case_fold(std::string_view s);
std::string to_upper(std::string_view s);

std::size_t code_point_count(std::string_view s);

bool is_space(char c);
std::string_view trim(std::string_view s);
// Trims and replaces every run of whitespace with one ASCII space.
std::string collapse_whitespace(std::string_view s);
std::vector<std::string> split_trimmed(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool iequals_ascii(std::string_view a, std::string_view b);
bool ends_with(std::string_view s, std::string_view suffix);

std::string xml_escape(std::string_view s);

// RFC 4180 style field quoting: only when the field needs it.
std::string csv_field(std::string_view s);

// Parses one CSV document into rows. Quoted fields may contain commas,
// doubled quotes and newlines. Lines whose first character is `comment`
// (outside quotes) are skipped when comment != '\0'.
std::vector<std::vector<std::string>> parse_csv(std::string_view doc, char comment = '\0');

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace coword::text
