#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "educor/error.hpp"
#include "educor/turtle.hpp"
#include "educor/validator.hpp"
#include "educor/vocabulary.hpp"
#include "support.hpp"

using namespace educor;
using testing_support::ec;

namespace {

std::set<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.code);
  return out;
}

Graph fixture(const std::string& code) {
  return testing_support::load_ttl(testing_support::data_path("fixtures/invalid/" + code + ".ttl"));
}

KnowledgeTopic topic(const std::string& id, const std::string& domain, int level) {
  return {.id = ec(id), .domain = domain, .difficulty = level};
}

std::vector<Diagnostic> axioms(const std::vector<KnowledgeTopic>& topics, std::vector<std::string> order) {
  LearningPath path{.id = ec("p"), .goal = ec("g")};
  for (const auto& id : order) path.topics.push_back(ec(id));
  return check_path_axioms_with(path, [&](const Iri& id) -> const KnowledgeTopic* {
    for (const auto& t : topics) {
      if (t.id == id) return &t;
    }
    return nullptr;
  });
}

}  // namespace

TEST(Validator, DemoFixtureIsClean) {
  auto ds = validate_graph(testing_support::demo_graph());
  EXPECT_TRUE(ds.empty()) << format_report(ds);
}

TEST(Validator, EachCodeHasATriggeringFixture) {
  for (const auto& info : diagnostic_catalog()) {
    std::string code(info.code);
    auto ds = validate_graph(fixture(code));
    EXPECT_TRUE(codes(ds).contains(code)) << code << "\n" << format_report(ds);
    for (const auto& d : ds) {
      if (d.code == code) EXPECT_EQ(d.severity, info.severity) << code;
    }
  }
}

TEST(Validator, FixturesAreMinimal) {
  // Apart from the targeted code, a fixture may only raise codes the target
  // implies; most raise nothing else.
  for (const char* code : {"E_DOMAIN", "E_RANGE", "E_CARDINALITY", "E_MISSING_FIELD", "E_TEST_EMPTY",
                           "E_PREREQ_CYCLE", "E_LEVEL_RANGE", "E_SCORE_RANGE", "E_TIMESTAMP_DUP",
                           "E_INDICATOR_DUP", "E_PATH_LEVEL", "E_PATH_PREREQ", "E_PATH_DUPLICATE",
                           "W_PATH_NONMONOTONE", "W_UNKNOWN_PROPERTY", "E_PATH_EMPTY", "E_SKILL_NO_TOPIC"}) {
    EXPECT_EQ(codes(validate_graph(fixture(code))), std::set<std::string>{code}) << code;
  }
}

TEST(Validator, OutputIsSortedAndDeduplicated) {
  auto ds = validate_graph(fixture("E_PREREQ_CYCLE"));
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
  EXPECT_EQ(std::adjacent_find(ds.begin(), ds.end()), ds.end());
  ASSERT_EQ(ds.size(), 2u);  // both topics on the cycle
  EXPECT_EQ(ds[0].subject, ec("A"));
  EXPECT_EQ(ds[1].subject, ec("B"));
}

TEST(Validator, ReportFormat) {
  auto ds = validate_graph(fixture("E_LEVEL_RANGE"));
  std::string line = format_report(ds);
  EXPECT_EQ(line.substr(0, line.find('\t', 6)), "error\tE_LEVEL_RANGE");
  EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 3);
}

TEST(PathAxioms, EndpointLevelViolation) {
  std::vector<KnowledgeTopic> ts = {topic("a", "M", 3), topic("b", "M", 1)};
  EXPECT_EQ(codes(axioms(ts, {"a", "b"})), std::set<std::string>{"E_PATH_LEVEL"});
  EXPECT_TRUE(axioms(ts, {"b", "a"}).empty());
}

TEST(PathAxioms, NonMonotoneOnlyWarns) {
  std::vector<KnowledgeTopic> ts = {topic("a", "M", 1), topic("b", "M", 3), topic("c", "M", 2), topic("d", "M", 3)};
  auto ds = axioms(ts, {"a", "b", "c", "d"});
  EXPECT_EQ(codes(ds), std::set<std::string>{"W_PATH_NONMONOTONE"});
  EXPECT_FALSE(has_errors(ds));
}

TEST(PathAxioms, DomainsAreIndependent) {
  std::vector<KnowledgeTopic> ts = {topic("a", "M", 3), topic("x", "N", 1), topic("b", "M", 4)};
  EXPECT_TRUE(axioms(ts, {"a", "x", "b"}).empty());
}

TEST(PathAxioms, PrerequisiteAndDuplicate) {
  std::vector<KnowledgeTopic> ts = {topic("a", "M", 1), topic("b", "N", 1)};
  ts[0].prerequisites = {ec("b")};
  EXPECT_EQ(codes(axioms(ts, {"a", "b"})), std::set<std::string>{"E_PATH_PREREQ"});
  EXPECT_TRUE(axioms(ts, {"b", "a"}).empty());
  EXPECT_TRUE(codes(axioms(ts, {"b", "b", "a"})).contains("E_PATH_DUPLICATE"));
}

TEST(PathAxioms, UnresolvedTopicThrows) {
  try {
    axioms({topic("a", "M", 1)}, {"a", "ghost"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnresolvedTopic);
  }
}

// Property: in a single domain with distinct endpoint levels, reversing a path
// that violates the endpoint rule clears E_PATH_LEVEL.
TEST(PathAxiomsProperty, ReversalClearsLevelError) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    std::size_t n = 2 + rng() % 6;
    std::vector<KnowledgeTopic> ts;
    std::vector<std::string> order;
    for (std::size_t k = 0; k < n; ++k) {
      ts.push_back(topic("t" + std::to_string(k), "M", 1 + static_cast<int>(rng() % 5)));
      order.push_back("t" + std::to_string(k));
    }
    if (ts.front().difficulty == ts.back().difficulty) continue;
    auto forward = codes(axioms(ts, order));
    std::reverse(order.begin(), order.end());
    auto backward = codes(axioms(ts, order));
    ASSERT_NE(forward.contains("E_PATH_LEVEL"), backward.contains("E_PATH_LEVEL"));
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

// Property: adding a violating triple never removes an existing diagnostic.
// Violations that make a topic unreadable are left out: a stored path over
// that topic can no longer be checked, so its path diagnostics disappear.
TEST(ValidatorProperty, ViolationsAccumulate) {
  const Graph& demo = testing_support::demo_graph();
  const auto& v = vocab();
  std::vector<Triple> violations = {
      {ec("res-ml-video"), v.difficulty, Term::integer(9)},
      {ec("res-ml-video"), v.qualityScore, Term::decimal(2.0)},
      {ec("Statistics"), v.hasPrerequisite, Term(ec("MachineLearning"))},
      {ec("res-py-audio"), v.hasPrerequisite, Term(ec("Python"))},
      {ec("alice-result-1"), v.timestamp, Term::string("later")},
      {ec("bob-result-1"), v.resultOfUser, Term(ec("alice"))},
      {ec("ghost"), v.domain, Term::string("M")},
      {ec("res-la-audio"), v.mediaType, Term::string("hologram")},
      {ec("Python"), ec("colour"), Term::string("blue")},
      {ec("alice-profile"), v.preferredDuration, Term::integer(-5)},
  };
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    Graph g;
    g.insert_all(demo);
    auto before = validate_graph(g);
    std::shuffle(violations.begin(), violations.end(), rng);
    for (const Triple& t : violations) {
      g.insert(t);
      auto after = validate_graph(g);
      for (const auto& d : before) {
        ASSERT_TRUE(std::binary_search(after.begin(), after.end(), d))
            << "lost " << d.code << " on " << d.subject.value() << " after adding a triple";
      }
      ASSERT_GT(after.size(), before.size());
      before = std::move(after);
    }
  }
}
