#include <gtest/gtest.h>

#include <random>

#include "educor/error.hpp"
#include "educor/graph.hpp"
#include "educor/vocabulary.hpp"
#include "support.hpp"

using namespace educor;
using testing_support::ec;

TEST(Iri, AcceptsAbsoluteAndBlank) {
  EXPECT_NO_THROW(Iri("https://github.com/tibonto/educor#KnowledgeTopic"));
  EXPECT_NO_THROW(Iri("urn:isbn:123"));
  EXPECT_TRUE(Iri("_:b1").is_blank());
}

TEST(Iri, RejectsMalformed) {
  for (const char* bad : {"", "relative/path", "http://a b", "http://x/<y>", "_:", "_:a.b", "1http://x"}) {
    try {
      Iri{bad};
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MalformedIri) << bad;
    }
  }
}

TEST(Term, NumericLiterals) {
  auto i = Term::integer(-42);
  EXPECT_EQ(i.value(), "-42");
  EXPECT_EQ(i.as_integer(), -42);
  EXPECT_EQ(Term::literal("+7", xsd::kInteger).as_integer(), 7);
  EXPECT_DOUBLE_EQ(*Term::literal("2.5E-2", xsd::kDouble).as_number(), 0.025);
  EXPECT_FALSE(Term::string("3").is_numeric());
  EXPECT_THROW(Term::literal("3.5", xsd::kInteger), Error);
  EXPECT_THROW(Term::literal("abc", xsd::kDecimal), Error);
}

TEST(Term, DecimalRoundTripsThroughText) {
  for (double v : {0.1, 1.0 / 3, 1e-300, 123456789.0, -0.0, 5e20}) {
    Term t = Term::decimal(v);
    EXPECT_EQ(*t.as_number(), v) << t.value();
    EXPECT_TRUE(t.value().find_first_of(".eE") != std::string::npos) << t.value();
  }
}

TEST(Graph, SetSemantics) {
  Graph g;
  Triple t{ec("a"), ec("p"), Term::integer(1)};
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(t));
}

TEST(Graph, SealedGraphRejectsInserts) {
  Graph g;
  g.insert({ec("a"), ec("p"), Term(ec("b"))});
  g.seal();
  try {
    g.insert({ec("c"), ec("p"), Term(ec("d"))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SealedGraph);
  }
  EXPECT_EQ(g.size(), 1u);
}

TEST(Graph, BlankPredicateRejected) {
  Graph g;
  EXPECT_THROW(g.insert({ec("a"), Iri("_:p"), Term(ec("b"))}), Error);
}

TEST(Graph, MatchAndHelpers) {
  Graph g;
  const auto& v = vocab();
  g.insert({ec("t1"), v.rdf_type, Term(v.KnowledgeTopic)});
  g.insert({ec("t1"), v.hasPrerequisite, Term(ec("t0"))});
  g.insert({ec("t2"), v.hasPrerequisite, Term(ec("t0"))});
  EXPECT_TRUE(g.has_type(ec("t1"), v.KnowledgeTopic));
  EXPECT_FALSE(g.has_type(ec("t2"), v.KnowledgeTopic));
  EXPECT_EQ(g.subjects(v.hasPrerequisite, Term(ec("t0"))), (std::vector<Iri>{ec("t1"), ec("t2")}));
  EXPECT_EQ(g.objects(ec("t1"), v.hasPrerequisite), (std::vector<Term>{Term(ec("t0"))}));
  EXPECT_EQ(g.match({}).size(), 3u);
  EXPECT_TRUE(g.match({ec("nobody"), std::nullopt, std::nullopt}).empty());
}

TEST(Graph, CopyKeepsIndexesValid) {
  Graph a;
  a.insert({ec("s"), ec("p"), Term(ec("o"))});
  Graph b = a;
  b.insert({ec("s"), ec("p"), Term(ec("o2"))});
  EXPECT_EQ(a.match({ec("s"), ec("p"), std::nullopt}).size(), 1u);
  EXPECT_EQ(b.match({ec("s"), ec("p"), std::nullopt}).size(), 2u);
}

// Property: index-backed match equals a linear scan for every pattern shape,
// and estimate() never undercounts.
TEST(GraphProperty, IndexedMatchEqualsScan) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    Graph g = testing_support::random_graph(rng, 200);
    std::vector<Triple> all(g.begin(), g.end());
    if (all.empty()) continue;
    for (int q = 0; q < 40; ++q) {
      const Triple& seed = all[rng() % all.size()];
      TriplePattern p;
      if (rng() % 2) p.subject = seed.subject;
      if (rng() % 2) p.predicate = seed.predicate;
      if (rng() % 2) p.object = seed.object;
      std::vector<Triple> expected;
      for (const Triple& t : all) {
        if (p.matches(t)) expected.push_back(t);
      }
      ASSERT_EQ(g.match(p), expected);
      ASSERT_GE(g.estimate(p), expected.size());
    }
  }
}
