#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace educor {

/// Absolute IRI, or a file-local blank node label written `_:label`.
/// Construction validates: non-empty, no whitespace or delimiter characters,
/// and a scheme prefix (or the `_:` blank-node prefix).
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& value() const noexcept { return value_; }
  bool is_blank() const noexcept { return value_.starts_with("_:"); }

  /// Returns a reason string if `value` is not acceptable as an Iri.
  static std::optional<std::string> check(std::string_view value);

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

namespace xsd {
inline constexpr std::string_view kNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
}  // namespace xsd

inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

/// RDF term: an IRI (including blank nodes) or a literal.
class Term {
 public:
  enum class Kind : std::uint8_t { Iri, Literal };

  Term(const Iri& iri);  // NOLINT: implicit on purpose, IRIs are terms

  static Term literal(std::string lexical, const Iri& datatype);
  static Term literal(std::string lexical, std::string_view datatype);
  static Term string(std::string lexical);
  static Term lang_string(std::string lexical, std::string lang);
  static Term integer(std::int64_t value);
  static Term decimal(double value);  // written as xsd:double, shortest round-trip form

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }

  /// IRI string for IRIs, lexical form for literals.
  const std::string& value() const noexcept { return value_; }
  /// Empty for IRIs.
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& lang() const noexcept { return lang_; }

  Iri as_iri() const;  // throws if literal
  bool is_numeric() const noexcept;
  bool is_integer_typed() const noexcept;
  std::optional<std::int64_t> as_integer() const;
  std::optional<double> as_number() const;

  auto operator<=>(const Term&) const = default;

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string lang);

  Kind kind_;
  std::string value_;
  std::string datatype_;
  std::string lang_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

bool is_numeric_datatype(std::string_view datatype);
bool is_integer_datatype(std::string_view datatype);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace educor

template <>
struct std::hash<educor::Iri> {
  std::size_t operator()(const educor::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.value());
  }
};

template <>
struct std::hash<educor::Term> {
  std::size_t operator()(const educor::Term& term) const noexcept {
    std::size_t h = std::hash<std::string>{}(term.value());
    h ^= std::hash<std::string>{}(term.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(term.lang()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
