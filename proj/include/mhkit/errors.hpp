#pragma once

#include <stdexcept>
#include <string>

namespace mhkit {

/// Mismatched qubit counts or out-of-range indices.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Generators that do not form a stabilizer group (-I generated, or
/// a non-commuting pair).
struct InvalidGroupError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A gate outside the class an operation requires (e.g. non-Clifford
/// in a tableau path).
struct GateClassError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Size caps: operations refuse rather than approximate.
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// .mhq / input text errors, with a 1-based line number.
struct ParseError : std::invalid_argument {
  ParseError(const std::string& msg, int line)
      : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line_no(line) {}
  int line_no;
};

/// A forced measurement outcome with zero Born probability.
struct ImpossibleOutcomeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mhkit
