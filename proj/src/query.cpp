#include "educor/query.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "educor/error.hpp"
#include "educor/vocabulary.hpp"
#include "lexer.hpp"

namespace educor {

using detail::Tok;
using detail::Token;

std::vector<std::string> QueryAst::header() const {
  if (!select_all) return projection;
  std::vector<std::string> out;
  auto note = [&](const QueryTerm& t) {
    if (auto* v = std::get_if<Variable>(&t)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
  };
  for (const auto& p : patterns) {
    note(p.subject);
    note(p.predicate);
    note(p.object);
  }
  return out;
}

namespace {

bool is_keyword(const Token& t, std::string_view upper) {
  if (t.kind != Tok::Word || t.text.size() != upper.size()) return false;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != upper[i]) return false;
  }
  return true;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : tokens_(detail::tokenize(text, {true, true})) {}

  QueryAst run() {
    while (is_keyword(cur(), "PREFIX")) {
      take();
      prefix_decl();
    }
    if (!is_keyword(cur(), "SELECT")) detail::fail_at(cur(), "expected SELECT, found " + describe(cur()));
    take();
    if (is_keyword(cur(), "DISTINCT")) {
      take();
      q_.distinct = true;
    }
    if (cur().kind == Tok::Star) {
      take();
      q_.select_all = true;
    } else {
      while (cur().kind == Tok::Variable) {
        projected_.push_back(cur());
        q_.projection.push_back(take().text);
      }
      if (q_.projection.empty()) detail::fail_at(cur(), "expected '*' or variables, found " + describe(cur()));
    }
    if (is_keyword(cur(), "WHERE")) take();
    expect(Tok::LBrace, "'{'");
    group();
    expect(Tok::RBrace, "'}'");
    if (cur().kind != Tok::End) detail::fail_at(cur(), "unexpected " + describe(cur()) + " after the query");
    check_variables();
    return std::move(q_);
  }

 private:
  const Token& cur() const { return tokens_[i_]; }
  const Token& take() { return tokens_[i_ == tokens_.size() - 1 ? i_ : i_++]; }

  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) detail::fail_at(cur(), std::string("expected ") + what + ", found " + describe(cur()));
    take();
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
    q_.prefixes[name.text.substr(0, name.text.size() - 1)] = ns.text;
  }

  void group() {
    while (cur().kind != Tok::RBrace && cur().kind != Tok::End) {
      if (is_keyword(cur(), "FILTER")) {
        take();
        filter();
        if (cur().kind == Tok::Dot) take();
        continue;
      }
      triples_block();
      if (cur().kind == Tok::Dot) {
        take();
      } else if (cur().kind != Tok::RBrace && !is_keyword(cur(), "FILTER")) {
        detail::fail_at(cur(), "expected '.' or '}', found " + describe(cur()));
      }
    }
  }

  void triples_block() {
    QueryTerm s = node(false);
    for (;;) {
      QueryTerm p = verb();
      for (;;) {
        q_.patterns.push_back({s, p, node(true)});
        if (cur().kind != Tok::Comma) break;
        take();
      }
      if (cur().kind != Tok::Semicolon) break;
      while (cur().kind == Tok::Semicolon) take();
      if (cur().kind == Tok::Dot || cur().kind == Tok::RBrace) break;
    }
  }

  void filter() {
    expect(Tok::LParen, "'(' after FILTER");
    for (;;) {
      QueryTerm lhs = node(true);
      CompareOp op;
      switch (cur().kind) {
        case Tok::Lt: op = CompareOp::Lt; break;
        case Tok::Le: op = CompareOp::Le; break;
        case Tok::Eq: op = CompareOp::Eq; break;
        case Tok::Ne: op = CompareOp::Ne; break;
        case Tok::Ge: op = CompareOp::Ge; break;
        case Tok::Gt: op = CompareOp::Gt; break;
        default: detail::fail_at(cur(), "expected a comparison operator, found " + describe(cur()));
      }
      take();
      QueryTerm rhs = node(true);
      q_.filters.push_back({std::move(lhs), op, std::move(rhs)});
      if (cur().kind != Tok::And) break;
      take();
    }
    expect(Tok::RParen, "')' to close FILTER");
  }

  Iri resolve(const Token& t) {
    if (t.kind == Tok::IriRef) {
      if (auto why = Iri::check(t.text); why || t.text.starts_with("_:")) {
        detail::fail_at(t, "invalid IRI: " + why.value_or("blank node syntax inside <>"));
      }
      return Iri(t.text);
    }
    auto colon = t.text.find(':');
    auto it = q_.prefixes.find(t.text.substr(0, colon));
    if (it == q_.prefixes.end()) {
      throw ParseError(ErrorKind::UndeclaredPrefix,
                       ParseDiagnostic{t.line, t.column, "undeclared prefix '" + t.text.substr(0, colon) + ":'", t.raw});
    }
    std::string full = it->second + t.text.substr(colon + 1);
    if (auto why = Iri::check(full)) detail::fail_at(t, "invalid IRI: " + *why);
    return Iri(full);
  }

  QueryTerm verb() {
    const Token& t = cur();
    if (t.kind == Tok::Word && t.text == "a") {
      take();
      return Term(vocab().rdf_type);
    }
    if (t.kind == Tok::Variable) {
      take();
      variable_tokens_.push_back(t);
      return Variable{t.text};
    }
    if (t.kind == Tok::IriRef || t.kind == Tok::PName) {
      take();
      return Term(resolve(t));
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

  QueryTerm node(bool allow_literal) {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Variable:
        take();
        variable_tokens_.push_back(t);
        return Variable{t.text};
      case Tok::IriRef:
      case Tok::PName:
        take();
        return Term(resolve(t));
      case Tok::Blank:
        take();
        return Term(Iri(t.text));
      default:
        break;
    }
    if (!allow_literal) detail::fail_at(t, "expected a subject, found " + describe(t));
    switch (t.kind) {
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
    detail::fail_at(t, "expected a term, found " + describe(t));
  }

  void check_variables() {
    std::set<std::string> bound;
    for (const auto& p : q_.patterns) {
      for (const QueryTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (auto* v = std::get_if<Variable>(t)) bound.insert(v->name);
      }
    }
    for (const Token& t : projected_) {
      if (!bound.contains(t.text)) detail::fail_at(t, "projected variable ?" + t.text + " does not occur in a pattern");
    }
    for (const Token& t : variable_tokens_) {
      if (!bound.contains(t.text)) detail::fail_at(t, "filter variable ?" + t.text + " does not occur in a pattern");
    }
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  QueryAst q_;
  std::vector<Token> projected_;
  std::vector<Token> variable_tokens_;
};

using Row = std::vector<std::optional<Term>>;  // indexed by variable slot

struct Plan {
  std::map<std::string, std::size_t> slots;
  std::vector<std::string> names;

  std::size_t slot(const std::string& name) {
    auto [it, fresh] = slots.try_emplace(name, names.size());
    if (fresh) names.push_back(name);
    return it->second;
  }
};

const Term* resolve_term(const QueryTerm& qt, const Row& row, const Plan& plan) {
  if (auto* t = std::get_if<Term>(&qt)) return t;
  const auto& slot = row[plan.slots.at(std::get<Variable>(qt).name)];
  return slot ? &*slot : nullptr;
}

// Pattern with the row's bindings substituted. Returns nullopt when a bound
// term cannot occupy its position (a literal subject or predicate).
std::optional<TriplePattern> instantiate(const QueryPattern& p, const Row& row, const Plan& plan) {
  TriplePattern tp;
  if (const Term* s = resolve_term(p.subject, row, plan)) {
    if (!s->is_iri()) return std::nullopt;
    tp.subject = s->as_iri();
  }
  if (const Term* pr = resolve_term(p.predicate, row, plan)) {
    if (!pr->is_iri()) return std::nullopt;
    tp.predicate = pr->as_iri();
  }
  if (const Term* o = resolve_term(p.object, row, plan)) tp.object = *o;
  return tp;
}

// Extends `row` with the triple's bindings; false on a conflict (a variable
// repeated within the pattern with different values).
bool bind_row(const QueryPattern& p, const Triple& t, Row& row, const Plan& plan) {
  auto put = [&](const QueryTerm& qt, const Term& value) {
    auto* v = std::get_if<Variable>(&qt);
    if (!v) return true;
    auto& slot = row[plan.slots.at(v->name)];
    if (slot) return *slot == value;
    slot = value;
    return true;
  };
  return put(p.subject, Term(t.subject)) && put(p.predicate, Term(t.predicate)) && put(p.object, t.object);
}

bool passes(const std::vector<Comparison>& filters, const Row& row, const Plan& plan) {
  for (const auto& f : filters) {
    const Term* l = resolve_term(f.lhs, row, plan);
    const Term* r = resolve_term(f.rhs, row, plan);
    if (!l || !r || !compare_terms(*l, f.op, *r)) return false;
  }
  return true;
}

bool row_less(const std::vector<Term>& a, const std::vector<Term>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
  }
  return a < b;
}

// Greedy: prefer patterns joined to what is already bound, then fewer free
// variables, then the smallest index estimate for the constant positions.
std::vector<std::size_t> greedy_order(const QueryAst& q, const Graph& graph) {
  std::vector<std::size_t> order;
  std::vector<bool> used(q.patterns.size(), false);
  std::set<std::string> bound;
  auto fixed = [&](const QueryTerm& t, auto pick) -> std::optional<decltype(pick(std::declval<Term>()))> {
    if (auto* term = std::get_if<Term>(&t)) return pick(*term);
    return std::nullopt;
  };
  for (std::size_t step = 0; step < q.patterns.size(); ++step) {
    std::size_t best = q.patterns.size();
    std::tuple<int, int, std::size_t, std::size_t> best_key{};
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
      if (used[i]) continue;
      const auto& p = q.patterns[i];
      TriplePattern tp;
      bool literal_in_iri_slot = false;
      auto iri_of = [&](const Term& t) -> Iri {
        if (!t.is_iri()) {
          literal_in_iri_slot = true;
          return vocab().rdf_type;
        }
        return t.as_iri();
      };
      tp.subject = fixed(p.subject, iri_of);
      tp.predicate = fixed(p.predicate, iri_of);
      tp.object = fixed(p.object, [](const Term& t) { return t; });
      std::size_t est = literal_in_iri_slot ? 0 : graph.estimate(tp);
      int unbound_vars = 0;
      bool connected = bound.empty();
      for (const QueryTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (auto* v = std::get_if<Variable>(t)) {
          if (bound.contains(v->name)) {
            connected = true;
          } else {
            ++unbound_vars;
          }
        }
      }
      std::tuple<int, int, std::size_t, std::size_t> key{connected ? 0 : 1, unbound_vars, est, i};
      if (best == q.patterns.size() || key < best_key) {
        best = i;
        best_key = key;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (const QueryTerm* t : {&q.patterns[best].subject, &q.patterns[best].predicate, &q.patterns[best].object}) {
      if (auto* v = std::get_if<Variable>(t)) bound.insert(v->name);
    }
  }
  return order;
}

BindingTable run(const QueryAst& q, const Graph& graph, const std::vector<std::size_t>& order) {
  Plan plan;
  for (const auto& p : q.patterns) {
    for (const QueryTerm* t : {&p.subject, &p.predicate, &p.object}) {
      if (auto* v = std::get_if<Variable>(t)) plan.slot(v->name);
    }
  }
  std::vector<Row> rows{Row(plan.names.size())};
  for (std::size_t idx : order) {
    const QueryPattern& p = q.patterns[idx];
    std::vector<Row> next;
    for (const Row& row : rows) {
      auto tp = instantiate(p, row, plan);
      if (!tp) continue;
      for (const Triple& t : graph.match(*tp)) {
        Row extended = row;
        if (bind_row(p, t, extended, plan)) next.push_back(std::move(extended));
      }
    }
    rows = std::move(next);
    if (rows.empty()) break;
  }

  BindingTable table{q.header(), {}};
  for (const Row& row : rows) {
    if (!passes(q.filters, row, plan)) continue;
    std::vector<Term> out;
    out.reserve(table.header.size());
    for (const auto& name : table.header) out.push_back(*row[plan.slots.at(name)]);
    table.rows.push_back(std::move(out));
  }
  std::sort(table.rows.begin(), table.rows.end(), row_less);
  if (q.distinct) table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
  return table;
}

std::string tsv_term(const Term& t) {
  if (t.is_iri()) return "<" + t.value() + ">";
  if (t.is_numeric()) return t.value();
  std::string out = "\"";
  for (char c : t.value()) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  if (!t.lang().empty()) {
    out += "@" + t.lang();
  } else if (t.datatype() != xsd::kString) {
    out += "^^<" + t.datatype() + ">";
  }
  return out;
}

}  // namespace

QueryAst parse_query(std::string_view text) { return QueryParser(text).run(); }

bool compare_terms(const Term& lhs, CompareOp op, const Term& rhs) {
  int cmp;
  auto l = lhs.as_number();
  auto r = rhs.as_number();
  if (lhs.is_numeric() && rhs.is_numeric() && l && r) {
    cmp = *l < *r ? -1 : (*l > *r ? 1 : 0);
  } else {
    auto key_l = std::make_pair(lhs.kind(), lhs.value());
    auto key_r = std::make_pair(rhs.kind(), rhs.value());
    cmp = key_l < key_r ? -1 : (key_r < key_l ? 1 : 0);
  }
  switch (op) {
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Le: return cmp <= 0;
    case CompareOp::Eq: return cmp == 0;
    case CompareOp::Ne: return cmp != 0;
    case CompareOp::Ge: return cmp >= 0;
    case CompareOp::Gt: return cmp > 0;
  }
  return false;
}

BindingTable execute(const QueryAst& query, const Graph& graph) {
  return run(query, graph, greedy_order(query, graph));
}

BindingTable execute_in_order(const QueryAst& query, const Graph& graph) {
  std::vector<std::size_t> order(query.patterns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return run(query, graph, order);
}

std::string to_tsv(const BindingTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "\t?" : "?") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + tsv_term(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_text_table(const BindingTable& table, const PrefixMap& prefixes) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head;
  for (const auto& h : table.header) head.push_back("?" + h);
  cells.push_back(head);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (const Term& t : row) line.push_back(display_term(t, prefixes));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table.header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      text += line[i];
      if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
    }
    out += text + "\n";
  }
  out += std::to_string(table.rows.size()) + (table.rows.size() == 1 ? " row\n" : " rows\n");
  return out;
}

}  // namespace educor
