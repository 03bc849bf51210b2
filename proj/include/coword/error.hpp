#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coword {

enum class ErrorKind {
    MalformedRecord,
    EncodingError,
    RuleCycle,
    DuplicatePattern,
    InvalidRule,
    EmptyAfterNormalization,
    NegativeWeight,
    ThresholdOutOfRange,
    InvalidArgument,
    FormatError,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the
// CLI exit path) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> line_;
};

}  // namespace coword
