#pragma once

// Fixture loaders, random generators and brute-force oracles shared by the
// unit tests and the acceptance runner. The oracles deliberately do not call
// the library's scoring or join code.

#include <random>
#include <string>
#include <vector>

#include "educor/catalog.hpp"
#include "educor/graph.hpp"
#include "educor/path_engine.hpp"
#include "educor/query.hpp"

namespace testing_support {

using namespace educor;

std::string data_path(const std::string& relative);
std::string read_text(const std::string& path);

Graph load_ttl(const std::string& path);

/// Vocabulary plus demo data, sealed.
const Graph& demo_graph();
const Catalog& demo_catalog();

Iri ec(const std::string& local);

/// Graph of at most `max_triples` triples exercising IRIs, blank nodes and
/// every literal form the Turtle writer must round-trip.
Graph random_graph(std::mt19937_64& rng, std::size_t max_triples);

/// Random prerequisite DAG over at most `max_topics` topics with resources,
/// a learner profile and requirement weights.
struct DagFixture {
  Graph graph;
  Catalog catalog;
  Iri goal{"urn:goal:unset"};
  UserProfile profile{.id = Iri("urn:profile:unset"), .user = Iri("urn:user:unset")};
  RecommendationRequirements req;
};

DagFixture random_dag(std::mt19937_64& rng, std::size_t max_topics);

struct OraclePath {
  std::vector<Iri> topics;
  double weight;
};

/// Every permutation of the goal's required topics that respects
/// prerequisites and the same-domain endpoint rule, scored with an
/// independent implementation of the path weight, sorted by weight
/// (ties within 1e-12) then topic sequence.
std::vector<OraclePath> brute_force_paths(const DagFixture& f);

/// Nested-loop evaluation over the full triple list, in pattern order.
/// Rows come back in an arbitrary but canonical order (sorted).
std::vector<std::vector<Term>> nested_loop_join(const QueryAst& q, const Graph& g);

/// Canonical ordering for comparing row sets computed different ways.
std::vector<std::vector<Term>> sorted_rows(std::vector<std::vector<Term>> rows);

/// Random BGP query over a graph's vocabulary, with occasional filters.
QueryAst random_query(std::mt19937_64& rng, const Graph& g);

}  // namespace testing_support
