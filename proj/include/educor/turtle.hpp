#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "educor/diagnostic.hpp"
#include "educor/graph.hpp"

namespace educor {

/// Prefix label (without the colon) to namespace IRI.
using PrefixMap = std::map<std::string, std::string>;

/// ec, dc, rdf, rdfs, xsd and owl.
PrefixMap default_prefixes();

struct TurtleDocument {
  Graph graph;
  PrefixMap prefixes;
};

/// Parses the Turtle subset: @prefix / PREFIX, absolute and compact IRIs,
/// `a`, `_:label` blank nodes, string / integer / decimal / double / boolean
/// literals with `^^` datatypes or `@lang` tags, `;` and `,` continuations
/// and `#` comments. Fails on the first error with a ParseError.
TurtleDocument parse_turtle(std::string_view text);

/// Deterministic serialization: prefix header sorted by label, then one block
/// per subject in (subject, predicate, object) order.
std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes);

/// `pfx:local` if some namespace covers `iri` with a safe local name.
std::optional<std::string> compact_iri(const std::string& iri, const PrefixMap& prefixes);

/// Accepts `<iri>`, `pfx:local` or an absolute IRI. Throws UndeclaredPrefix / MalformedIri.
Iri expand_name(std::string_view text, const PrefixMap& prefixes);

/// Term rendered for humans: compact IRIs where possible, quoted literals.
std::string display_term(const Term& term, const PrefixMap& prefixes);

}  // namespace educor
