#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levelcost {

/// Caller broke a documented precondition (misaligned series, length mismatch).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of an operation (r <= -1, d >= 1).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A levelization ratio whose denominator is zero or not positive.
struct DegenerateDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed external input. Carries the source path and 1-based line when known.
class InputError : public std::runtime_error {
 public:
  InputError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(format(source, line, what)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!out.empty()) out += ": ";
    return out + what;
  }

  std::string source_;
  std::size_t line_;
};

}  // namespace levelcost
