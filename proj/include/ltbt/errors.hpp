/* errors.hpp -- error types shared across the library */

#pragma once

#include <stdexcept>
#include <string>

namespace ltbt {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A state index (initial state or transition endpoint) is out of range.
struct InvalidState : Error {
  using Error::Error;
};

/// A must-branch lacks its underlying may-transition.
struct InconsistentMust : Error {
  using Error::Error;
};

/// Rejected switch bound (ready combined with k = infinity, or negative k).
struct InvalidBound : Error {
  using Error::Error;
};

/// Instance exceeds a configured size cap (subset construction, oracle).
struct SizeLimit : Error {
  using Error::Error;
};

/// Text input does not conform to the grammar.  `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Header counts of an .aut file disagree with the body.
struct CountMismatch : Error {
  using Error::Error;
};

/// A strategy chose a move that is not an edge of the game graph.
struct IllegalStrategy : Error {
  using Error::Error;
};

}  // namespace ltbt
