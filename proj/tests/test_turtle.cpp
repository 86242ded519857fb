#include <gtest/gtest.h>

#include <random>

#include "educor/diagnostic.hpp"
#include "educor/error.hpp"
#include "educor/turtle.hpp"
#include "educor/vocabulary.hpp"
#include "support.hpp"

using namespace educor;
using testing_support::ec;

namespace {

ParseDiagnostic diagnostic_of(const std::string& text) {
  try {
    parse_turtle(text);
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  ADD_FAILURE() << "parsed: " << text;
  return {};
}

}  // namespace

TEST(Turtle, ParsesTopicWithPrerequisite) {
  auto doc = parse_turtle(R"(@prefix ec: <https://github.com/tibonto/educor#> .
ec:A a ec:KnowledgeTopic ; ec:hasPrerequisite ec:B .)");
  EXPECT_EQ(doc.graph.size(), 2u);
  EXPECT_TRUE(doc.graph.contains({ec("A"), vocab().rdf_type, Term(vocab().KnowledgeTopic)}));
  EXPECT_TRUE(doc.graph.contains({ec("A"), vocab().hasPrerequisite, Term(ec("B"))}));
  EXPECT_EQ(doc.prefixes.at("ec"), kEducorNs);
}

TEST(Turtle, LiteralForms) {
  auto g = parse_turtle(R"(PREFIX ec: <https://github.com/tibonto/educor#>
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
ec:x ec:i 3 ; ec:d 2.5 ; ec:e 1e3 ; ec:b true ;
     ec:s "a \"q\"\né" ; ec:l "hallo"@de ; ec:t "7"^^xsd:integer ; ec:u "x"^^xsd:string , 'single' .)")
               .graph;
  auto obj = [&](const char* p) { return g.objects(ec("x"), ec(p)); };
  EXPECT_EQ(obj("i").front(), Term::integer(3));
  EXPECT_EQ(obj("d").front(), Term::literal("2.5", xsd::kDecimal));
  EXPECT_EQ(obj("e").front(), Term::literal("1e3", xsd::kDouble));
  EXPECT_EQ(obj("b").front(), Term::literal("true", xsd::kBoolean));
  EXPECT_EQ(obj("s").front(), Term::string("a \"q\"\n\xC3\xA9"));
  EXPECT_EQ(obj("l").front(), Term::lang_string("hallo", "de"));
  EXPECT_EQ(obj("t").front(), Term::integer(7));
  EXPECT_EQ(obj("u").size(), 2u);
}

TEST(Turtle, EmptyDocumentIsEmptyGraph) {
  EXPECT_TRUE(parse_turtle("").graph.empty());
  EXPECT_TRUE(parse_turtle("# only a comment\n").graph.empty());
}

TEST(Turtle, UndeclaredPrefix) {
  try {
    parse_turtle("foo:a foo:b foo:c .");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndeclaredPrefix);
    EXPECT_EQ(e.diagnostic().line, 1u);
    EXPECT_EQ(e.diagnostic().column, 1u);
  }
}

TEST(Turtle, MissingDotReportsPosition) {
  auto d = diagnostic_of("@prefix ec: <https://github.com/tibonto/educor#> .\nec:a ec:b ec:c\nec:d ec:e ec:f .");
  EXPECT_EQ(d.line, 3u);
  EXPECT_EQ(d.column, 1u);
}

TEST(Turtle, UnterminatedString) {
  auto d = diagnostic_of("<urn:a> <urn:b> \"open .");
  EXPECT_EQ(d.line, 1u);
  EXPECT_EQ(d.column, 17u);
}

TEST(Turtle, BadLiteralIsDiagnosed) {
  auto d = diagnostic_of(
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n<urn:a> <urn:b> \"x1\"^^xsd:integer .");
  EXPECT_EQ(d.line, 2u);
}

TEST(Turtle, SerializationIsCompactAndSorted) {
  Graph g;
  g.insert({ec("B"), vocab().rdf_type, Term(vocab().KnowledgeTopic)});
  g.insert({ec("A"), vocab().difficulty, Term::integer(2)});
  g.insert({ec("A"), vocab().domain, Term::string("Math")});
  std::string text = serialize_turtle(g, default_prefixes());
  EXPECT_NE(text.find("ec:A\n    ec:difficulty 2 ;\n    ec:domain \"Math\" .\n"), std::string::npos) << text;
  EXPECT_LT(text.find("ec:A"), text.find("ec:B\n    a ec:KnowledgeTopic ."));
  EXPECT_EQ(parse_turtle(text).graph, g);
}

TEST(Turtle, ExpandName) {
  auto p = default_prefixes();
  EXPECT_EQ(expand_name("ec:alice", p), ec("alice"));
  EXPECT_EQ(expand_name("<urn:x>", p), Iri("urn:x"));
  EXPECT_EQ(expand_name("https://example.org/a", p), Iri("https://example.org/a"));
  EXPECT_THROW(expand_name("nope:x", p), Error);
}

TEST(TurtleProperty, RoundTripAndDeterminism) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Graph g = testing_support::random_graph(rng, 120);
    std::string text = serialize_turtle(g, default_prefixes());
    Graph back = parse_turtle(text).graph;
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(serialize_turtle(back, default_prefixes()), text);
  }
}

// Deleting any single token from a valid document either still parses or
// fails with a positioned diagnostic, never anything else.
TEST(TurtleProperty, TokenDeletionGivesDiagnostics) {
  const std::string doc = testing_support::read_text(testing_support::data_path("fixtures/two_paths.ttl"));
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    bool boundary = i == 0 || std::isspace(static_cast<unsigned char>(doc[i - 1]));
    if (boundary && !std::isspace(static_cast<unsigned char>(doc[i]))) starts.push_back(i);
  }
  std::size_t failures = 0;
  for (std::size_t s : starts) {
    std::size_t e = doc.find_first_of(" \t\n", s);
    std::string mutated = doc.substr(0, s) + doc.substr(e == std::string::npos ? doc.size() : e);
    try {
      parse_turtle(mutated);
    } catch (const ParseError& err) {
      ++failures;
      EXPECT_GE(err.diagnostic().line, 1u);
      EXPECT_GE(err.diagnostic().column, 1u);
      EXPECT_FALSE(err.diagnostic().message.empty());
    }
  }
  EXPECT_GT(failures, starts.size() / 2);
}
