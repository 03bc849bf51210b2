#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coword::analysis {

// Word-level patterns deciding whether a canonical keyword names a sensing
// technology. Labels and terms are split into alphanumeric tokens; a term
// matches when its tokens occur contiguously in the label ("e-nose" matches
// "electronic nose (e-nose)"). A term written "*suffix" matches any token
// ending in suffix ("*sensor" matches "nanobiosensor").
class SensorRules {
public:
    struct Rule {
        std::vector<std::string> tokens;
        bool suffix = false;
    };

    static SensorRules defaults();
    // One term per line; blank lines and '#' comments ignored.
    static SensorRules load(std::string_view text);

    bool matches(std::string_view label) const;
    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::vector<Rule> rules_;
};

bool is_sensor_term(std::string_view label, const SensorRules& rules);

std::vector<std::string> word_tokens(std::string_view s);

}  // namespace coword::analysis
