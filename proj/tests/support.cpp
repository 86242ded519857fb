#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "educor/turtle.hpp"
#include "educor/vocabulary.hpp"

#ifndef EDUCOR_DATA_DIR
#error "EDUCOR_DATA_DIR must be defined"
#endif

namespace testing_support {

std::string data_path(const std::string& relative) { return std::string(EDUCOR_DATA_DIR) + "/" + relative; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_ttl(const std::string& path) { return parse_turtle(read_text(path)).graph; }

const Graph& demo_graph() {
  static const Graph g = [] {
    Graph out = load_ttl(data_path("educor.ttl"));
    out.insert_all(load_ttl(data_path("demo.ttl")));
    out.seal();
    return out;
  }();
  return g;
}

const Catalog& demo_catalog() {
  static const Catalog c = load_catalog(demo_graph());
  return c;
}

Iri ec(const std::string& local) { return Iri(std::string(kEducorNs) + local); }

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double unit(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a", "b", "Zebra", " ", "\"", "\\", "\n", "\t", "\r", "'", "@", "#", ":", "<", ">", ".",
      "42", "\xC3\xA9", "\xE2\x82\xAC", "\xF0\x9F\x93\x98", "^^", "_:x", ";", ",", "{", "}"};
  std::string s;
  int n = uniform(rng, 0, 8);
  for (int i = 0; i < n; ++i) s += pick(rng, pieces);
  return s;
}

std::string random_local(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a", "B", "c", "z9", "_", "-", "x", "Topic", "r1", "%20", ".",
                                                  "~", "/", "?q=1", "#frag", "\xC3\xA9"};
  std::string s = "n";
  int n = uniform(rng, 0, 4);
  for (int i = 0; i < n; ++i) s += pick(rng, pieces);
  return s;
}

Term random_literal(std::mt19937_64& rng) {
  switch (uniform(rng, 0, 9)) {
    case 0:
    case 1:
      return Term::string(random_text(rng));
    case 2:
      return Term::lang_string(random_text(rng), pick(rng, std::vector<std::string>{"en", "de", "en-US", "pt-BR"}));
    case 3:
      return Term::integer(std::uniform_int_distribution<std::int64_t>(-100000, 100000)(rng));
    case 4:
      return Term::literal(pick(rng, std::vector<std::string>{"+7", "007", "-0", "12"}), xsd::kInteger);
    case 5:
      return Term::literal(pick(rng, std::vector<std::string>{"1.50", "-0.25", "3.0", ".5", "10."}), xsd::kDecimal);
    case 6:
      return Term::decimal(std::uniform_real_distribution<double>(-1e6, 1e6)(rng));
    case 7:
      return Term::literal(pick(rng, std::vector<std::string>{"true", "false"}), xsd::kBoolean);
    case 8:
      if (chance(rng, 0.5)) return Term::literal(pick(rng, std::vector<std::string>{"1e3", "2.5E-2", "-1"}), xsd::kDouble);
      return Term::literal(pick(rng, std::vector<std::string>{"abc", "1"}), "http://example.org/dt#custom");
    default:
      return Term::literal(random_text(rng), "http://example.org/dt#opaque");
  }
}

}  // namespace

Graph random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  std::size_t target = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  std::size_t pool = static_cast<std::size_t>(std::sqrt(static_cast<double>(target))) + 3;
  std::vector<Iri> nodes;
  for (std::size_t i = 0; i < pool; ++i) {
    switch (uniform(rng, 0, 3)) {
      case 0: nodes.push_back(ec(random_local(rng))); break;
      case 1: nodes.push_back(Iri("http://example.org/" + random_local(rng))); break;
      case 2: nodes.push_back(Iri("_:b" + std::to_string(i))); break;
      default: nodes.push_back(Iri("urn:isbn:" + std::to_string(uniform(rng, 1000, 9999)))); break;
    }
  }
  std::vector<Iri> predicates = {vocab().rdf_type, vocab().difficulty, vocab().rdfs_label,
                                 vocab().educationalLevel, Iri("http://example.org/p#rel")};
  for (int i = 0; i < 3; ++i) predicates.push_back(ec("p" + random_local(rng)));

  Graph g;
  for (std::size_t attempts = 0; g.size() < target && attempts < 4 * target; ++attempts) {
    Iri s = pick(rng, nodes);
    Iri p = pick(rng, predicates);
    Term o = chance(rng, 0.4) ? Term(pick(rng, nodes)) : random_literal(rng);
    g.insert({s, p, o});
  }
  return g;
}

DagFixture random_dag(std::mt19937_64& rng, std::size_t max_topics) {
  DagFixture f;
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_topics)(rng);
  static const std::vector<std::string> domains = {"Math", "Code", "Art"};
  int domain_count = uniform(rng, 1, 3);

  // Names are shuffled so IRI order is unrelated to the generation order,
  // which fixes the DAG orientation.
  std::vector<std::string> names = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel"};
  std::shuffle(names.begin(), names.end(), rng);
  std::vector<KnowledgeTopic> topics;
  double edge_p = unit(rng) * 0.6;
  for (std::size_t i = 0; i < n; ++i) {
    KnowledgeTopic t{.id = ec("dag-" + names[i])};
    t.domain = domains[static_cast<std::size_t>(uniform(rng, 0, domain_count - 1))];
    t.difficulty = uniform(rng, kMinLevel, kMaxLevel);
    for (std::size_t j = 0; j < i; ++j) {
      if (chance(rng, edge_p)) t.prerequisites.push_back(topics[j].id);
    }
    std::sort(t.prerequisites.begin(), t.prerequisites.end());
    topics.push_back(std::move(t));
  }

  static const std::vector<std::string> modes = {"text", "visual", "auditory"};
  std::size_t rid = 0;
  for (auto& t : topics) {
    int resources = uniform(rng, 0, 3);
    for (int r = 0; r < resources; ++r) {
      EducationalResource res{.id = ec("dag-res-" + std::to_string(rid++)), .topic = t.id};
      res.media = static_cast<MediaType>(uniform(rng, 0, 3));
      res.duration_minutes = uniform(rng, 0, 90);
      res.difficulty = uniform(rng, kMinLevel, kMaxLevel);
      res.quality.score = std::round(unit(rng) * 100) / 100;
      res.accessibility.clear();
      for (const auto& m : modes) {
        if (chance(rng, 0.5)) res.accessibility.insert(m);
      }
      if (res.accessibility.empty()) res.accessibility.insert(pick(rng, modes));
      t.resources.push_back(res.id);
      add_entity(f.graph, res);
    }
    std::sort(t.resources.begin(), t.resources.end());
  }
  for (const auto& t : topics) add_entity(f.graph, t);

  if (chance(rng, 0.5)) {
    Skill s{.id = ec("dag-skill")};
    for (const auto& t : topics) {
      if (chance(rng, 0.4)) s.required_topics.insert(t.id);
    }
    if (s.required_topics.empty()) s.required_topics.insert(topics.back().id);
    add_entity(f.graph, s);
    f.goal = s.id;
  } else {
    f.goal = topics.back().id;
  }

  UserProfile p{.id = ec("dag-profile"), .user = ec("dag-user")};
  p.educational_level = uniform(rng, kMinLevel, kMaxLevel);
  p.preferred_duration_minutes = uniform(rng, 5, 60);
  p.access_modes.clear();
  for (const auto& m : modes) {
    if (chance(rng, 0.6)) p.access_modes.insert(m);
  }
  if (p.access_modes.empty()) p.access_modes.insert("text");
  for (int m = 0; m < 4; ++m) {
    if (chance(rng, 0.7)) p.media_preferences[static_cast<MediaType>(m)] = std::round(unit(rng) * 100) / 100;
  }
  add_entity(f.graph, p);
  f.graph.seal();
  f.catalog = load_catalog(f.graph);
  f.profile = f.catalog.profiles.at(p.id);

  double w[4];
  double sum = 0.0;
  for (double& x : w) {
    x = chance(rng, 0.2) ? 0.0 : unit(rng);
    sum += x;
  }
  if (sum == 0.0) {
    w[0] = 1.0;
    sum = 1.0;
  }
  f.req.difficulty_fit = w[0] / sum;
  f.req.preference_fit = w[1] / sum;
  f.req.quality = w[2] / sum;
  f.req.path_length = 1.0 - f.req.difficulty_fit - f.req.preference_fit - f.req.quality;
  if (f.req.path_length < 0) f.req.path_length = 0;
  f.req.max_paths = static_cast<std::size_t>(uniform(rng, 1, 5));
  return f;
}

namespace {

struct OracleTopic {
  std::string domain;
  int difficulty;
  std::vector<Iri> prerequisites;
  double preference = 0.0;  // of the best accessible resource
  double quality = 0.0;
};

}  // namespace

std::vector<OraclePath> brute_force_paths(const DagFixture& f) {
  const Catalog& c = f.catalog;
  const UserProfile& p = f.profile;

  std::set<Iri> required;
  std::vector<Iri> stack;
  if (auto s = c.skills.find(f.goal); s != c.skills.end()) {
    stack.assign(s->second.required_topics.begin(), s->second.required_topics.end());
  } else {
    stack.push_back(f.goal);
  }
  while (!stack.empty()) {
    Iri t = stack.back();
    stack.pop_back();
    if (!required.insert(t).second) continue;
    for (const Iri& pre : c.topics.at(t).prerequisites) stack.push_back(pre);
  }

  auto pref_of = [&](MediaType m) {
    auto it = p.media_preferences.find(m);
    return it == p.media_preferences.end() ? 0.0 : it->second;
  };
  std::map<Iri, OracleTopic> info;
  for (const Iri& id : required) {
    const KnowledgeTopic& t = c.topics.at(id);
    OracleTopic o{t.domain, t.difficulty, t.prerequisites};
    std::optional<std::pair<double, Iri>> best;
    for (const auto& [rid, r] : c.resources) {
      if (r.topic != id) continue;
      bool ok = false;
      for (const auto& m : r.accessibility) ok = ok || p.access_modes.count(m) > 0;
      if (!ok) continue;
      double dur = p.preferred_duration_minutes > 0
                       ? 1.0 - std::min(1.0, std::fabs(double(r.duration_minutes - p.preferred_duration_minutes)) /
                                                  double(p.preferred_duration_minutes))
                       : (r.duration_minutes == 0 ? 1.0 : 0.0);
      double score = 0.4 * (1.0 - std::abs(r.difficulty - p.educational_level) / 4.0) + 0.3 * pref_of(r.media) +
                     0.2 * r.quality.score + 0.1 * dur;
      if (!best || score > best->first + 1e-12 || (std::fabs(score - best->first) <= 1e-12 && rid < best->second)) {
        best = {score, rid};
      }
    }
    if (best) {
      const EducationalResource& r = c.resources.at(best->second);
      o.preference = pref_of(r.media);
      o.quality = r.quality.score;
    }
    info.emplace(id, o);
  }

  std::vector<Iri> order(required.begin(), required.end());
  std::vector<OraclePath> out;
  do {
    std::map<Iri, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    bool ok = true;
    for (std::size_t i = 0; i < order.size() && ok; ++i) {
      for (const Iri& pre : info.at(order[i]).prerequisites) ok = ok && pos.at(pre) < i;
    }
    std::map<std::string, std::pair<int, int>> ends;  // domain -> (first, last) level
    for (const Iri& id : order) {
      const auto& t = info.at(id);
      auto [it, fresh] = ends.try_emplace(t.domain, t.difficulty, t.difficulty);
      if (!fresh) it->second.second = t.difficulty;
    }
    for (const auto& [_, e] : ends) ok = ok && e.first <= e.second;
    if (!ok) continue;

    double dist = 0, pref = 0, qual = 0;
    for (const Iri& id : order) {
      const auto& t = info.at(id);
      dist += std::abs(t.difficulty - p.educational_level) / 4.0;
      pref += t.preference;
      qual += t.quality;
    }
    double n = static_cast<double>(order.size());
    double weight = f.req.difficulty_fit * (1.0 - dist / n) + f.req.preference_fit * (pref / n) +
                    f.req.quality * (qual / n) + f.req.path_length * 1.0;
    out.push_back({order, weight});
  } while (std::next_permutation(order.begin(), order.end()));

  std::stable_sort(out.begin(), out.end(), [](const OraclePath& a, const OraclePath& b) {
    if (std::fabs(a.weight - b.weight) > 1e-12) return a.weight > b.weight;
    return a.topics < b.topics;
  });
  return out;
}

namespace {

using Bindings = std::map<std::string, Term>;

bool unify(const QueryTerm& qt, const Term& value, Bindings& b) {
  if (const auto* t = std::get_if<Term>(&qt)) return *t == value;
  const std::string& name = std::get<Variable>(qt).name;
  auto it = b.find(name);
  if (it != b.end()) return it->second == value;
  b.emplace(name, value);
  return true;
}

bool oracle_compare(const Term& l, CompareOp op, const Term& r) {
  int cmp;
  if (l.is_numeric() && r.is_numeric()) {
    double a = std::stod(l.value());
    double b = std::stod(r.value());
    cmp = a < b ? -1 : (a > b ? 1 : 0);
  } else {
    auto a = std::make_pair(l.is_literal(), l.value());
    auto b = std::make_pair(r.is_literal(), r.value());
    cmp = a < b ? -1 : (a > b ? 1 : 0);
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

const Term& value_of(const QueryTerm& qt, const Bindings& b) {
  if (const auto* t = std::get_if<Term>(&qt)) return *t;
  return b.at(std::get<Variable>(qt).name);
}

}  // namespace

std::vector<std::vector<Term>> nested_loop_join(const QueryAst& q, const Graph& g) {
  std::vector<Triple> all(g.begin(), g.end());
  std::vector<Bindings> rows{Bindings{}};
  for (const auto& pat : q.patterns) {
    std::vector<Bindings> next;
    for (const auto& row : rows) {
      for (const Triple& t : all) {
        Bindings b = row;
        if (unify(pat.subject, Term(t.subject), b) && unify(pat.predicate, Term(t.predicate), b) &&
            unify(pat.object, t.object, b)) {
          next.push_back(std::move(b));
        }
      }
    }
    rows = std::move(next);
  }

  std::vector<std::string> header;
  if (q.select_all) {
    for (const auto& pat : q.patterns) {
      for (const QueryTerm* t : {&pat.subject, &pat.predicate, &pat.object}) {
        if (const auto* v = std::get_if<Variable>(t)) {
          if (std::find(header.begin(), header.end(), v->name) == header.end()) header.push_back(v->name);
        }
      }
    }
  } else {
    header = q.projection;
  }

  std::vector<std::vector<Term>> out;
  for (const auto& row : rows) {
    bool keep = true;
    for (const auto& f : q.filters) keep = keep && oracle_compare(value_of(f.lhs, row), f.op, value_of(f.rhs, row));
    if (!keep) continue;
    std::vector<Term> projected;
    for (const auto& h : header) projected.push_back(row.at(h));
    out.push_back(std::move(projected));
  }
  out = sorted_rows(std::move(out));
  if (q.distinct) out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<Term>> sorted_rows(std::vector<std::vector<Term>> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

QueryAst random_query(std::mt19937_64& rng, const Graph& g) {
  std::vector<Triple> all(g.begin(), g.end());
  static const std::vector<std::string> vars = {"a", "b", "c", "d"};
  QueryAst q;
  q.select_all = true;
  int n = uniform(rng, 1, 4);
  for (int i = 0; i < n; ++i) {
    QueryPattern p{Variable{pick(rng, vars)}, Variable{pick(rng, vars)}, Variable{pick(rng, vars)}};
    if (!all.empty()) {
      const Triple& t = pick(rng, all);
      if (chance(rng, 0.3)) p.subject = Term(t.subject);
      if (chance(rng, 0.6)) p.predicate = Term(t.predicate);
      if (chance(rng, 0.3)) p.object = t.object;
    }
    q.patterns.push_back(std::move(p));
  }
  std::vector<std::string> used;
  for (const auto& p : q.patterns) {
    for (const QueryTerm* t : {&p.subject, &p.predicate, &p.object}) {
      if (const auto* v = std::get_if<Variable>(t)) used.push_back(v->name);
    }
  }
  if (!used.empty() && chance(rng, 0.3)) {
    q.filters.push_back({Variable{pick(rng, used)}, static_cast<CompareOp>(uniform(rng, 0, 5)),
                         chance(rng, 0.5) ? QueryTerm{Term::integer(uniform(rng, -50, 50))}
                                          : QueryTerm{Variable{pick(rng, used)}}});
  }
  if (!used.empty() && chance(rng, 0.3)) {
    q.select_all = false;
    q.projection = {pick(rng, used)};
    q.distinct = chance(rng, 0.5);
  }
  return q;
}

}  // namespace testing_support
