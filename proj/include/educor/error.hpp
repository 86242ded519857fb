#pragma once

#include <stdexcept>
#include <string>

namespace educor {

// Every failure raised by the library carries a stable kind so callers (and
// the CLI) can branch on it without parsing messages.
enum class ErrorKind {
  MalformedIri,
  MalformedLiteral,
  SealedGraph,
  MissingType,
  MissingRequiredField,
  InvalidField,
  Parse,
  UndeclaredPrefix,
  UnresolvedTopic,
  UnknownGoal,
  UnknownTopic,
  UnknownResource,
  UnknownIndicator,
  CyclicPrerequisites,
  NoFeasibleOrder,
  EmptyTest,
  EmptySchema,
  DuplicateGoldClass,
  InvalidRequirements,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by typed views; `field()` names the offending property.
class EntityError : public Error {
 public:
  EntityError(ErrorKind kind, std::string field, const std::string& message)
      : Error(kind, message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace educor
