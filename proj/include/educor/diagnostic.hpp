#pragma once

#include <cstddef>
#include <string>

#include "educor/error.hpp"

namespace educor {

/// Position of a syntax error. line/column are 1-based and always point at a
/// character of the input (end-of-input errors point at the last character).
struct ParseDiagnostic {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
  std::string token;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, ParseDiagnostic diagnostic)
      : Error(kind, diagnostic.to_string()), diagnostic_(std::move(diagnostic)) {}

  const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

}  // namespace educor
