#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "educor/graph.hpp"
#include "educor/turtle.hpp"

namespace educor {

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
};

using QueryTerm = std::variant<Variable, Term>;

struct QueryPattern {
  QueryTerm subject;
  QueryTerm predicate;
  QueryTerm object;
  bool operator==(const QueryPattern&) const = default;
};

enum class CompareOp { Lt, Le, Eq, Ne, Ge, Gt };

struct Comparison {
  QueryTerm lhs;
  CompareOp op;
  QueryTerm rhs;
  bool operator==(const Comparison&) const = default;
};

/// SELECT queries over one basic graph pattern with optional FILTERs.
struct QueryAst {
  PrefixMap prefixes;
  bool distinct = false;
  bool select_all = false;
  std::vector<std::string> projection;  // empty when select_all
  std::vector<QueryPattern> patterns;
  std::vector<Comparison> filters;  // conjunction

  /// Projected variables: explicit list, or pattern variables in order of
  /// first appearance.
  std::vector<std::string> header() const;
};

/// Throws ParseError (kind Parse or UndeclaredPrefix) with the position.
QueryAst parse_query(std::string_view text);

struct BindingTable {
  std::vector<std::string> header;
  std::vector<std::vector<Term>> rows;  // row[i] binds header[i]
  bool operator==(const BindingTable&) const = default;
};

/// Natural join of the pattern matches, filtered and projected. Rows are
/// sorted by the lexical forms of their terms.
BindingTable execute(const QueryAst& query, const Graph& graph);

/// Join in the given pattern order without reordering, for cross-checking
/// the planner.
BindingTable execute_in_order(const QueryAst& query, const Graph& graph);

/// Filter semantics: numeric comparison when both terms are numeric
/// literals, otherwise comparison of (kind, lexical form).
bool compare_terms(const Term& lhs, CompareOp op, const Term& rhs);

/// Header line of `?var` names, then one line per row; IRIs in <>, strings
/// quoted with escapes, numbers bare.
std::string to_tsv(const BindingTable& table);

/// Aligned, human-readable columns with IRIs compacted by `prefixes`.
std::string to_text_table(const BindingTable& table, const PrefixMap& prefixes);

}  // namespace educor
