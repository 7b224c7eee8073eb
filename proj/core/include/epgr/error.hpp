#pragma once

#include <stdexcept>
#include <string>

namespace epgr {

enum class ErrorCode {
  NotClosed,        // table entry out of range, or a row/column repeats an element
  NoIdentity,       // no two-sided neutral element
  NotAssociative,   // (a*b)*c != a*(b*c) for some triple
  NoInverse,        // some element has no inverse (defensive; unreachable after the other checks)
  SpecTooLarge,     // requested group exceeds the configured size cap
  BadParameter,     // invalid construction parameter (non-prime p, n < 1, ...)
  ParseError,       // malformed spec string, catalog line, or table file
  DisconnectedGraph,
  ColoringSizeMismatch,  // coloring does not cover every edge of the graph
  DimensionMismatch,     // certificate shape does not match the decomposition
  HypothesisNotMet,      // a coloring strategy was asked to run where its precondition fails
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epgr
