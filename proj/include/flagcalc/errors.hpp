#pragma once

#include <stdexcept>
#include <string>

namespace flagcalc {

// Syntax error in one of the text formats; position is a 0-based offset into
// the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

// Mixing unlabelled atoms with flags, or flags of two different types.
class TypeError : public std::runtime_error {
public:
    explicit TypeError(const std::string& message) : std::runtime_error(message) {}
};

// Flattening level too small for the expression.
class LevelError : public std::runtime_error {
public:
    LevelError(const std::string& message, int minimal_level)
        : std::runtime_error(message + "; minimal feasible level is " +
                             std::to_string(minimal_level)),
          minimal_level_(minimal_level) {}

    int minimal_level() const { return minimal_level_; }

private:
    int minimal_level_;
};

}  // namespace flagcalc
