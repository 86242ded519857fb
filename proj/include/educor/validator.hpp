#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "educor/entities.hpp"

namespace educor {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity;
  std::string code;
  Iri subject;
  std::string message;

  auto operator<=>(const Diagnostic&) const = default;
};

struct DiagnosticCode {
  std::string_view code;
  Severity severity;
  std::string_view description;
};

/// Every code the validator can emit.
const std::vector<DiagnosticCode>& diagnostic_catalog();

/// All pattern constraints: property domains and ranges, required fields and
/// cardinalities, value ranges, prerequisite acyclicity, test-result
/// timestamp uniqueness and the learning-path axioms for stored paths.
/// Result is sorted by (severity, subject, code, message) and duplicate-free.
std::vector<Diagnostic> validate_graph(const Graph& graph);

/// Learning-path axioms for one path:
///   E_PATH_LEVEL       within a domain, the first topic is harder than the last
///   W_PATH_NONMONOTONE within a domain, levels are not non-decreasing although
///                      the endpoints are ordered
///   E_PATH_PREREQ      a topic appears before one of its prerequisites
///   E_PATH_DUPLICATE   a topic appears twice
/// Throws Error(UnresolvedTopic) when a path topic is not a knowledge topic.
std::vector<Diagnostic> check_path_axioms(const LearningPath& path, const Graph& graph);

/// Same checks with topics looked up through `lookup` (nullptr = unresolved).
template <class Lookup>
std::vector<Diagnostic> check_path_axioms_with(const LearningPath& path, Lookup&& lookup);

/// One `severity<TAB>code<TAB>subject<TAB>message` line per diagnostic.
std::string format_report(const std::vector<Diagnostic>& diagnostics);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

namespace detail {
std::vector<Diagnostic> path_axioms(const LearningPath& path,
                                    const std::vector<const KnowledgeTopic*>& topics);
}

template <class Lookup>
std::vector<Diagnostic> check_path_axioms_with(const LearningPath& path, Lookup&& lookup) {
  std::vector<const KnowledgeTopic*> topics;
  topics.reserve(path.topics.size());
  for (const Iri& id : path.topics) topics.push_back(lookup(id));
  return detail::path_axioms(path, topics);
}

}  // namespace educor
