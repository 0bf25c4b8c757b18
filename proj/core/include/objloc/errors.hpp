#pragma once

#include <stdexcept>
#include <string>

namespace objloc {

/// Malformed scenario, inconsistent trajectories, missing log sections.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The linear system is rank deficient after fixing the gauge nodes.
class DegenerateGraphError : public std::runtime_error {
  public:
    explicit DegenerateGraphError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure with the offending line number (1-based) prepended.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace objloc
