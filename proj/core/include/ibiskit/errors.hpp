#ifndef IBISKIT_ERRORS_HPP
#define IBISKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ibiskit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed cycle notation, group files, certificates. `line` is 1-based and
// 0 when no line context exists.
struct ParseError : Error {
  explicit ParseError(const std::string& msg, std::size_t line_no = 0)
      : Error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  std::size_t line;
};

struct DegreeMismatchError : Error {
  using Error::Error;
};

struct PointOutOfRangeError : Error {
  using Error::Error;
};

// A node-count budget ran out. Distinct from any legitimate result.
struct BudgetExhaustedError : Error {
  using Error::Error;
};

// Index or subset-count cap exceeded when building an induced action.
struct CapExceededError : Error {
  using Error::Error;
};

struct NotASubgroupError : Error {
  using Error::Error;
};

// A catalog entry failed its declared-order or declared-transitivity
// self-check at load time.
struct ValidationError : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

// Certificate schema problems (unknown fields, future schema_version).
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace ibiskit

#endif
