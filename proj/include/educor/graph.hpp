#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "educor/term.hpp"

namespace educor {

/// Triple pattern; an empty optional is a wildcard.
struct TriplePattern {
  std::optional<Iri> subject;
  std::optional<Iri> predicate;
  std::optional<Term> object;

  bool matches(const Triple& t) const;
};

/// Set-semantics triple store with (S), (P), (O), (S,P) and (P,O) indexes.
///
/// Single writer while loading. After `seal()` the graph rejects inserts and
/// may be shared read-only between threads.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  Graph(const Graph& other);
  Graph& operator=(const Graph& other);
  Graph(Graph&&) noexcept = default;
  Graph& operator=(Graph&&) noexcept = default;

  /// Returns true when the triple was not already present.
  bool insert(Triple t);
  void insert_all(const Graph& other);

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  /// Matching triples in (subject, predicate, object) order.
  std::vector<Triple> match(const TriplePattern& pattern) const;
  /// Upper bound on match().size() read from the indexes, without materializing.
  std::size_t estimate(const TriplePattern& pattern) const;

  std::vector<Term> objects(const Iri& subject, const Iri& predicate) const;
  std::vector<Iri> subjects(const Iri& predicate, const Term& object) const;
  bool has_type(const Iri& node, const Iri& cls) const;

  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }

  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  bool operator==(const Graph& other) const { return triples_ == other.triples_; }

 private:
  using Bucket = std::vector<const Triple*>;

  struct PairHash {
    template <class A, class B>
    std::size_t operator()(const std::pair<A, B>& p) const noexcept {
      std::size_t h = std::hash<A>{}(p.first);
      return h ^ (std::hash<B>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
  };

  void index(const Triple* t);
  void rebuild_indexes();
  std::vector<Triple> collect(const Bucket& bucket, const TriplePattern& pattern) const;

  std::set<Triple> triples_;
  std::unordered_map<Iri, Bucket> by_s_;
  std::unordered_map<Iri, Bucket> by_p_;
  std::unordered_map<Term, Bucket> by_o_;
  std::unordered_map<std::pair<Iri, Iri>, Bucket, PairHash> by_sp_;
  std::unordered_map<std::pair<Iri, Term>, Bucket, PairHash> by_po_;
  bool sealed_ = false;
};

}  // namespace educor
