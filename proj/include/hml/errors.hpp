#pragma once

#include <stdexcept>
#include <string>

namespace hml {

// Raised when an input exceeds a configured resource cap (state count,
// formula count, subset budget). Distinct from malformed input.
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_{line}, column_{column} {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace hml
