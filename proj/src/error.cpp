#include "coword/error.hpp"

namespace coword {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedRecord: return "MalformedRecord";
        case ErrorKind::EncodingError: return "EncodingError";
        case ErrorKind::RuleCycle: return "RuleCycle";
        case ErrorKind::DuplicatePattern: return "DuplicatePattern";
        case ErrorKind::InvalidRule: return "InvalidRule";
        case ErrorKind::EmptyAfterNormalization: return "EmptyAfterNormalization";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::ThresholdOutOfRange: return "ThresholdOutOfRange";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::FormatError: return "FormatError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> line) {
    std::string out(to_string(kind));
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace coword
