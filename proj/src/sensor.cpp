#include "coword/sensor.hpp"

#include <algorithm>

#include "coword/error.hpp"
#include "coword/text.hpp"

namespace coword::analysis {

namespace {

bool is_word_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') || u >= 0x80;
}

constexpr std::string_view kDefaultRules =
    "sensor\n"
    "sensors\n"
    "biosensor\n"
    "immunosensor\n"
    "aptasensor\n"
    "chemosensor\n"
    "genosensor\n"
    "nanosensor\n"
    "cytosensor\n"
    "piezosensor\n"
    "e-nose\n"
    "*sensor\n"
    "*sensors\n";

}  // namespace

std::vector<std::string> word_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_word_byte(c)) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

SensorRules SensorRules::defaults() { return load(kDefaultRules); }

SensorRules SensorRules::load(std::string_view text) {
    SensorRules rules;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        const auto line = text::trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        Rule rule;
        std::string_view term = line;
        if (term.front() == '*') {
            rule.suffix = true;
            term.remove_prefix(1);
        }
        rule.tokens = word_tokens(text::case_fold(term));
        if (rule.tokens.empty() || (rule.suffix && rule.tokens.size() != 1))
            throw Error(ErrorKind::InvalidRule, "bad sensor rule '" + std::string(line) + "'", lineno);
        rules.rules_.push_back(std::move(rule));
        if (end == text.size()) break;
    }
    return rules;
}

bool SensorRules::matches(std::string_view label) const {
    const auto tokens = word_tokens(text::case_fold(label));
    for (const auto& rule : rules_) {
        if (rule.suffix) {
            const auto& suffix = rule.tokens.front();
            if (std::any_of(tokens.begin(), tokens.end(),
                            [&](const std::string& t) { return text::ends_with(t, suffix); }))
                return true;
        } else if (std::search(tokens.begin(), tokens.end(), rule.tokens.begin(), rule.tokens.end()) !=
                   tokens.end()) {
            return true;
        }
    }
    return false;
}

bool is_sensor_term(std::string_view label, const SensorRules& rules) { return rules.matches(label); }

}  // namespace coword::analysis
