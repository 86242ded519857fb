#include "educor/graph.hpp"

#include <algorithm>

#include "educor/error.hpp"
#include "educor/vocabulary.hpp"

namespace educor {

bool TriplePattern::matches(const Triple& t) const {
  return (!subject || *subject == t.subject) && (!predicate || *predicate == t.predicate) &&
         (!object || *object == t.object);
}

Graph::Graph(const Graph& other) : triples_(other.triples_), sealed_(other.sealed_) {
  rebuild_indexes();
}

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    triples_ = other.triples_;
    sealed_ = other.sealed_;
    rebuild_indexes();
  }
  return *this;
}

void Graph::rebuild_indexes() {
  by_s_.clear();
  by_p_.clear();
  by_o_.clear();
  by_sp_.clear();
  by_po_.clear();
  for (const Triple& t : triples_) index(&t);
}

void Graph::index(const Triple* t) {
  by_s_[t->subject].push_back(t);
  by_p_[t->predicate].push_back(t);
  by_o_[t->object].push_back(t);
  by_sp_[{t->subject, t->predicate}].push_back(t);
  by_po_[{t->predicate, t->object}].push_back(t);
}

bool Graph::insert(Triple t) {
  if (sealed_) throw Error(ErrorKind::SealedGraph, "graph is sealed");
  if (t.predicate.is_blank()) {
    throw Error(ErrorKind::MalformedIri, "predicate cannot be a blank node: '" + t.predicate.value() + "'");
  }
  auto [it, inserted] = triples_.insert(std::move(t));
  if (inserted) index(&*it);
  return inserted;
}

void Graph::insert_all(const Graph& other) {
  for (const Triple& t : other) insert(t);
}

std::vector<Triple> Graph::collect(const Bucket& bucket, const TriplePattern& pattern) const {
  std::vector<Triple> out;
  for (const Triple* t : bucket) {
    if (pattern.matches(*t)) out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> Graph::match(const TriplePattern& p) const {
  static const Bucket kEmpty;
  auto find = [](const auto& map, const auto& key) -> const Bucket& {
    auto it = map.find(key);
    return it == map.end() ? kEmpty : it->second;
  };

  if (p.subject && p.predicate && p.object) {
    Triple t{*p.subject, *p.predicate, *p.object};
    if (triples_.contains(t)) return {t};
    return {};
  }
  if (p.subject && p.predicate) return collect(find(by_sp_, std::pair{*p.subject, *p.predicate}), p);
  if (p.predicate && p.object) return collect(find(by_po_, std::pair{*p.predicate, *p.object}), p);
  if (p.subject && p.object) {
    const Bucket& s = find(by_s_, *p.subject);
    const Bucket& o = find(by_o_, *p.object);
    return collect(s.size() <= o.size() ? s : o, p);
  }
  if (p.subject) return collect(find(by_s_, *p.subject), p);
  if (p.predicate) return collect(find(by_p_, *p.predicate), p);
  if (p.object) return collect(find(by_o_, *p.object), p);
  return {triples_.begin(), triples_.end()};
}

std::size_t Graph::estimate(const TriplePattern& p) const {
  auto count = [](const auto& map, const auto& key) -> std::size_t {
    auto it = map.find(key);
    return it == map.end() ? 0 : it->second.size();
  };
  if (p.subject && p.predicate && p.object) {
    return triples_.contains(Triple{*p.subject, *p.predicate, *p.object}) ? 1 : 0;
  }
  if (p.subject && p.predicate) return count(by_sp_, std::pair{*p.subject, *p.predicate});
  if (p.predicate && p.object) return count(by_po_, std::pair{*p.predicate, *p.object});
  if (p.subject && p.object) return std::min(count(by_s_, *p.subject), count(by_o_, *p.object));
  if (p.subject) return count(by_s_, *p.subject);
  if (p.predicate) return count(by_p_, *p.predicate);
  if (p.object) return count(by_o_, *p.object);
  return triples_.size();
}

std::vector<Term> Graph::objects(const Iri& subject, const Iri& predicate) const {
  std::vector<Term> out;
  for (auto& t : match({subject, predicate, std::nullopt})) out.push_back(t.object);
  return out;
}

std::vector<Iri> Graph::subjects(const Iri& predicate, const Term& object) const {
  std::vector<Iri> out;
  for (auto& t : match({std::nullopt, predicate, object})) out.push_back(t.subject);
  return out;
}

bool Graph::has_type(const Iri& node, const Iri& cls) const {
  return triples_.contains(Triple{node, vocab().rdf_type, Term(cls)});
}

}  // namespace educor
