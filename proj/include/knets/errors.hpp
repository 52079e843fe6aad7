#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace knets {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A network, comparator, or sequence violates a structural invariant
/// (index out of range, width mismatch, overlapping round, ...).
struct StructuralError : Error {
  using Error::Error;
};

/// An operation was called with parameters outside its domain.
struct ParameterError : Error {
  using Error::Error;
};

/// An enumeration exceeded its work budget. `progress` counts the units
/// of work (inputs or candidate sequences) finished before the cap hit.
struct ResourceError : Error {
  std::uint64_t progress;
  explicit ResourceError(const std::string& what, std::uint64_t progress_done = 0)
      : Error(what), progress(progress_done) {}
};

/// knet text that does not parse. `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

}  // namespace knets
