#include "educor/term.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "educor/error.hpp"

namespace educor {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedIri: return "MalformedIri";
    case ErrorKind::MalformedLiteral: return "MalformedLiteral";
    case ErrorKind::SealedGraph: return "SealedGraph";
    case ErrorKind::MissingType: return "MissingType";
    case ErrorKind::MissingRequiredField: return "MissingRequiredField";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UndeclaredPrefix: return "UndeclaredPrefix";
    case ErrorKind::UnresolvedTopic: return "UnresolvedTopic";
    case ErrorKind::UnknownGoal: return "UnknownGoal";
    case ErrorKind::UnknownTopic: return "UnknownTopic";
    case ErrorKind::UnknownResource: return "UnknownResource";
    case ErrorKind::UnknownIndicator: return "UnknownIndicator";
    case ErrorKind::CyclicPrerequisites: return "CyclicPrerequisites";
    case ErrorKind::NoFeasibleOrder: return "NoFeasibleOrder";
    case ErrorKind::EmptyTest: return "EmptyTest";
    case ErrorKind::EmptySchema: return "EmptySchema";
    case ErrorKind::DuplicateGoldClass: return "DuplicateGoldClass";
    case ErrorKind::InvalidRequirements: return "InvalidRequirements";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool is_iri_forbidden(unsigned char c) {
  if (c <= 0x20 || c == 0x7f) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

bool matches_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// [+-]? digits? ( '.' digits )? ( [eE] [+-]? digits )?, at least one digit
// in the mantissa.
bool matches_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++exp_digits; }
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

constexpr std::array<std::string_view, 13> kIntegerTypes = {
    "integer", "int", "long", "short", "byte", "nonNegativeInteger",
    "positiveInteger", "negativeInteger", "nonPositiveInteger",
    "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"};

}  // namespace

std::optional<std::string> Iri::check(std::string_view value) {
  if (value.empty()) return "empty IRI";
  for (unsigned char c : value) {
    if (std::isspace(c)) return "IRI contains whitespace";
    if (is_iri_forbidden(c)) return std::string("IRI contains forbidden character '") +
                                    static_cast<char>(c) + "'";
  }
  if (value.starts_with("_:")) {
    if (value.size() == 2) return "blank node without label";
    for (unsigned char c : value.substr(2)) {
      if (!std::isalnum(c) && c != '_' && c != '-') return "invalid blank node label";
    }
    return std::nullopt;
  }
  // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  if (!std::isalpha(static_cast<unsigned char>(value[0]))) return "IRI is not absolute (no scheme)";
  std::size_t i = 1;
  while (i < value.size() &&
         (std::isalnum(static_cast<unsigned char>(value[i])) || value[i] == '+' ||
          value[i] == '-' || value[i] == '.')) {
    ++i;
  }
  if (i >= value.size() || value[i] != ':') return "IRI is not absolute (no scheme)";
  return std::nullopt;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (auto reason = check(value_)) {
    throw Error(ErrorKind::MalformedIri, *reason + ": '" + value_ + "'");
  }
}

bool is_integer_datatype(std::string_view datatype) {
  if (!datatype.starts_with(xsd::kNs)) return false;
  auto local = datatype.substr(xsd::kNs.size());
  for (auto t : kIntegerTypes) {
    if (local == t) return true;
  }
  return false;
}

bool is_numeric_datatype(std::string_view datatype) {
  return is_integer_datatype(datatype) || datatype == xsd::kDecimal ||
         datatype == xsd::kDouble || datatype == "http://www.w3.org/2001/XMLSchema#float";
}

Term::Term(const Iri& iri) : kind_(Kind::Iri), value_(iri.value()) {}

Term::Term(Kind kind, std::string value, std::string datatype, std::string lang)
    : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)), lang_(std::move(lang)) {}

Term Term::literal(std::string lexical, const Iri& datatype) {
  return literal(std::move(lexical), std::string_view(datatype.value()));
}

Term Term::literal(std::string lexical, std::string_view datatype) {
  if (datatype == kRdfLangString) {
    throw Error(ErrorKind::MalformedLiteral, "rdf:langString literal requires a language tag");
  }
  if (auto reason = Iri::check(datatype); reason || datatype.starts_with("_:")) {
    throw Error(ErrorKind::MalformedLiteral, "invalid datatype IRI '" + std::string(datatype) + "'");
  }
  if (is_integer_datatype(datatype) && !matches_integer(lexical)) {
    throw Error(ErrorKind::MalformedLiteral, "'" + lexical + "' is not a valid integer");
  }
  if (is_numeric_datatype(datatype) && !matches_number(lexical)) {
    throw Error(ErrorKind::MalformedLiteral, "'" + lexical + "' is not a valid number");
  }
  return Term(Kind::Literal, std::move(lexical), std::string(datatype), {});
}

Term Term::string(std::string lexical) {
  return Term(Kind::Literal, std::move(lexical), std::string(xsd::kString), {});
}

Term Term::lang_string(std::string lexical, std::string lang) {
  if (lang.empty()) throw Error(ErrorKind::MalformedLiteral, "empty language tag");
  for (char c : lang) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') {
      throw Error(ErrorKind::MalformedLiteral, "invalid language tag '" + lang + "'");
    }
  }
  return Term(Kind::Literal, std::move(lexical), std::string(kRdfLangString), std::move(lang));
}

Term Term::integer(std::int64_t value) {
  return Term(Kind::Literal, std::to_string(value), std::string(xsd::kInteger), {});
}

Term Term::decimal(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::MalformedLiteral, "non-finite number");
  return Term(Kind::Literal, format_double(value), std::string(xsd::kDouble), {});
}

Iri Term::as_iri() const {
  if (!is_iri()) throw Error(ErrorKind::InvalidField, "expected IRI, found literal '" + value_ + "'");
  return Iri(value_);
}

bool Term::is_numeric() const noexcept { return is_literal() && is_numeric_datatype(datatype_); }

bool Term::is_integer_typed() const noexcept { return is_literal() && is_integer_datatype(datatype_); }

std::optional<std::int64_t> Term::as_integer() const {
  if (!is_integer_typed()) return std::nullopt;
  std::string_view s = value_;
  if (s.starts_with('+')) s.remove_prefix(1);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::optional<double> Term::as_number() const {
  if (!is_numeric()) return std::nullopt;
  std::string_view s = value_;
  if (s.starts_with('+')) s.remove_prefix(1);
  double out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), ptr);
  // Keep a decimal point or exponent so the text never reads as an integer.
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

}  // namespace educor
