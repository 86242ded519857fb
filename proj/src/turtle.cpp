#include "educor/turtle.hpp"

#include <cctype>

#include "educor/vocabulary.hpp"
#include "lexer.hpp"

namespace educor {

using detail::Tok;
using detail::Token;

PrefixMap default_prefixes() {
  return {
      {"dc", std::string(kLrmiAlignmentNs)},
      {"ec", std::string(kEducorNs)},
      {"owl", std::string(kOwlNs)},
      {"rdf", std::string(kRdfNs)},
      {"rdfs", std::string(kRdfsNs)},
      {"xsd", std::string(xsd::kNs)},
  };
}

namespace {

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : tokens_(detail::tokenize(text, {})) {}

  TurtleDocument run() {
    while (cur().kind != Tok::End) statement();
    return std::move(doc_);
  }

 private:
  const Token& cur() const { return tokens_[i_]; }
  const Token& take() { return tokens_[i_ == tokens_.size() - 1 ? i_ : i_++]; }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) detail::fail_at(cur(), std::string("expected ") + what + ", found " + describe(cur()));
    take();
  }

  void statement() {
    const Token& t = cur();
    if (t.kind == Tok::AtWord) {
      if (t.text != "prefix") detail::fail_at(t, "unsupported directive @" + t.text);
      take();
      prefix_decl();
      expect(Tok::Dot, "'.' after @prefix");
      return;
    }
    if (t.kind == Tok::Word && (t.text == "PREFIX" || t.text == "prefix")) {
      take();
      prefix_decl();
      return;
    }
    triples();
    expect(Tok::Dot, "'.' to end the statement");
  }

  void prefix_decl() {
    const Token& name = cur();
    if (name.kind != Tok::PName || name.text.back() != ':') {
      detail::fail_at(name, "expected a prefix label like 'ec:', found " + describe(name));
    }
    take();
    const Token& ns = cur();
    if (ns.kind != Tok::IriRef) detail::fail_at(ns, "expected a namespace IRI, found " + describe(ns));
    if (auto why = Iri::check(ns.text)) detail::fail_at(ns, "invalid namespace IRI: " + *why);
    take();
    doc_.prefixes[name.text.substr(0, name.text.size() - 1)] = ns.text;
  }

  Iri resolve(const Token& t) {
    if (t.kind == Tok::IriRef) {
      if (auto why = Iri::check(t.text); why || t.text.starts_with("_:")) {
        detail::fail_at(t, "invalid IRI: " + why.value_or("blank node syntax inside <>"));
      }
      return Iri(t.text);
    }
    auto colon = t.text.find(':');
    auto it = doc_.prefixes.find(t.text.substr(0, colon));
    if (it == doc_.prefixes.end()) {
      throw ParseError(ErrorKind::UndeclaredPrefix,
                       ParseDiagnostic{t.line, t.column, "undeclared prefix '" + t.text.substr(0, colon) + ":'", t.raw});
    }
    std::string full = it->second + t.text.substr(colon + 1);
    if (auto why = Iri::check(full)) detail::fail_at(t, "invalid IRI: " + *why);
    return Iri(full);
  }

  Iri subject() {
    const Token& t = cur();
    if (t.kind == Tok::IriRef || t.kind == Tok::PName) {
      take();
      return resolve(t);
    }
    if (t.kind == Tok::Blank) {
      take();
      return Iri(t.text);
    }
    detail::fail_at(t, "expected a subject, found " + describe(t));
  }

  Iri verb() {
    const Token& t = cur();
    if (t.kind == Tok::Word && t.text == "a") {
      take();
      return vocab().rdf_type;
    }
    if (t.kind == Tok::IriRef || t.kind == Tok::PName) {
      take();
      return resolve(t);
    }
    detail::fail_at(t, "expected a predicate, found " + describe(t));
  }

  Term literal_or_fail(const Token& at, std::string lexical, std::string_view datatype) {
    try {
      return Term::literal(std::move(lexical), datatype);
    } catch (const Error& e) {
      detail::fail_at(at, e.what());
    }
  }

  Term object() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::IriRef:
      case Tok::PName:
        take();
        return Term(resolve(t));
      case Tok::Blank:
        take();
        return Term(Iri(t.text));
      case Tok::Integer:
        take();
        return literal_or_fail(t, t.text, xsd::kInteger);
      case Tok::Decimal:
        take();
        return literal_or_fail(t, t.text, xsd::kDecimal);
      case Tok::Double:
        take();
        return literal_or_fail(t, t.text, xsd::kDouble);
      case Tok::Word:
        if (t.text == "true" || t.text == "false") {
          take();
          return literal_or_fail(t, t.text, xsd::kBoolean);
        }
        break;
      case Tok::String: {
        take();
        if (cur().kind == Tok::LangTag) {
          const Token& lang = take();
          try {
            return Term::lang_string(t.text, lang.text);
          } catch (const Error& e) {
            detail::fail_at(lang, e.what());
          }
        }
        if (cur().kind == Tok::Carets) {
          take();
          const Token& dt = cur();
          if (dt.kind != Tok::IriRef && dt.kind != Tok::PName) {
            detail::fail_at(dt, "expected a datatype IRI after '^^', found " + describe(dt));
          }
          take();
          Iri datatype = resolve(dt);
          if (datatype.value() == xsd::kString) return Term::string(t.text);
          return literal_or_fail(dt, t.text, datatype.value());
        }
        return Term::string(t.text);
      }
      default:
        break;
    }
    detail::fail_at(t, "expected an object, found " + describe(t));
  }

  void triples() {
    Iri s = subject();
    for (;;) {
      Iri p = verb();
      for (;;) {
        doc_.graph.insert(Triple{s, p, object()});
        if (cur().kind != Tok::Comma) break;
        take();
      }
      if (cur().kind != Tok::Semicolon) break;
      while (cur().kind == Tok::Semicolon) take();
      if (cur().kind == Tok::Dot) break;  // trailing ';' before '.'
    }
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  TurtleDocument doc_;
};

bool safe_local(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return local.front() != '-';
}

bool matches_plain_integer(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// [+-]? digits* '.' digits+
bool matches_plain_decimal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size() || s[i] != '.') return false;
  ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          static const char* hex = "0123456789ABCDEF";
          out += "\\u00";
          out += hex[(static_cast<unsigned char>(c) >> 4) & 0xF];
          out += hex[static_cast<unsigned char>(c) & 0xF];
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string write_iri(const std::string& iri, const PrefixMap& prefixes) {
  if (iri.starts_with("_:")) return iri;
  if (auto c = compact_iri(iri, prefixes)) return *c;
  return "<" + iri + ">";
}

std::string write_term(const Term& t, const PrefixMap& prefixes) {
  if (t.is_iri()) return write_iri(t.value(), prefixes);
  if (!t.lang().empty()) return quote(t.value()) + "@" + t.lang();
  const std::string& dt = t.datatype();
  if (dt == xsd::kString) return quote(t.value());
  if (dt == xsd::kInteger && matches_plain_integer(t.value())) return t.value();
  if (dt == xsd::kDecimal && matches_plain_decimal(t.value())) return t.value();
  if (dt == xsd::kBoolean && (t.value() == "true" || t.value() == "false")) return t.value();
  return quote(t.value()) + "^^" + write_iri(dt, prefixes);
}

}  // namespace

TurtleDocument parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

std::optional<std::string> compact_iri(const std::string& iri, const PrefixMap& prefixes) {
  const std::string* best_label = nullptr;
  std::size_t best_len = 0;
  for (const auto& [label, ns] : prefixes) {
    if (ns.size() > best_len && iri.size() > ns.size() && iri.starts_with(ns) &&
        safe_local(std::string_view(iri).substr(ns.size()))) {
      best_label = &label;
      best_len = ns.size();
    }
  }
  if (!best_label) return std::nullopt;
  return *best_label + ":" + iri.substr(best_len);
}

Iri expand_name(std::string_view text, const PrefixMap& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    return Iri(std::string(text.substr(1, text.size() - 2)));
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto it = prefixes.find(std::string(text.substr(0, colon)));
    if (it != prefixes.end()) return Iri(it->second + std::string(text.substr(colon + 1)));
    // absolute IRIs carry '//' or a known scheme; anything else is a bad prefix
    if (text.substr(colon + 1).starts_with("//") || text.starts_with("urn:") || text.starts_with("_:")) {
      return Iri(std::string(text));
    }
  }
  throw Error(ErrorKind::UndeclaredPrefix, "cannot expand '" + std::string(text) + "': undeclared prefix");
}

std::string display_term(const Term& term, const PrefixMap& prefixes) { return write_term(term, prefixes); }

std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [label, ns] : prefixes) out += "@prefix " + label + ": <" + ns + "> .\n";

  const Iri& rdf_type = vocab().rdf_type;
  const Iri* subject = nullptr;
  const Iri* predicate = nullptr;
  for (const Triple& t : graph) {
    if (!subject || *subject != t.subject) {
      if (subject) out += " .\n";
      out += "\n" + write_iri(t.subject.value(), prefixes);
      subject = &t.subject;
      predicate = nullptr;
    }
    if (!predicate || *predicate != t.predicate) {
      if (predicate) out += " ;";
      out += "\n    ";
      out += t.predicate == rdf_type ? std::string("a") : write_iri(t.predicate.value(), prefixes);
      out += " ";
      predicate = &t.predicate;
    } else {
      out += ", ";
    }
    out += write_term(t.object, prefixes);
  }
  if (subject) out += " .\n";
  return out;
}

}  // namespace educor
