#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <random>

#include "educor/diagnostic.hpp"
#include "educor/error.hpp"
#include "educor/eval.hpp"
#include "support.hpp"

using namespace educor;

namespace {

SchemaMapping mapping(std::size_t covered, std::size_t uncovered) {
  SchemaMapping m{"s", {}};
  for (std::size_t i = 0; i < covered; ++i) m.entries.push_back({"c" + std::to_string(i), "KnowledgeTopic"});
  for (std::size_t i = 0; i < uncovered; ++i) m.entries.push_back({"u" + std::to_string(i), std::nullopt});
  return m;
}

ErrorKind failure_of(std::string_view text) {
  try {
    parse_mapping(text, "x");
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST(ComputeRecall, PublishedFractions) {
  struct Case {
    std::size_t tp, fn;
    const char* shown;
  };
  for (const Case& c : {Case{5, 1, "0.833"}, Case{6, 1, "0.857"}, Case{7, 1, "0.875"}, Case{4, 0, "1.000"}}) {
    auto r = compute_recall(mapping(c.tp, c.fn));
    EXPECT_EQ(r.tp, c.tp);
    EXPECT_EQ(r.fn, c.fn);
    EXPECT_DOUBLE_EQ(r.recall, double(c.tp) / double(c.tp + c.fn));
    EXPECT_EQ(format_recall(r.recall), c.shown);
  }
}

TEST(ComputeRecall, EmptySchemaRejected) {
  try {
    compute_recall(mapping(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySchema);
  }
}

TEST(ParseMapping, Format) {
  auto m = parse_mapping("# schema: Repo X\n\nSubject\tKnowledgeTopic\n# note\nLicense\t-\n", "fallback");
  EXPECT_EQ(m.schema_name, "Repo X");
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries[0], (MappingEntry{"Subject", "KnowledgeTopic"}));
  EXPECT_EQ(m.entries[1], (MappingEntry{"License", std::nullopt}));
  EXPECT_EQ(parse_mapping("A\tSkill\n", "fallback").schema_name, "fallback");
}

TEST(ParseMapping, Errors) {
  EXPECT_EQ(failure_of(""), ErrorKind::EmptySchema);
  EXPECT_EQ(failure_of("# schema: Only comments\n"), ErrorKind::EmptySchema);
  EXPECT_EQ(failure_of("A\tSkill\nA\t-\n"), ErrorKind::DuplicateGoldClass);
  EXPECT_EQ(failure_of("A Skill\n"), ErrorKind::Parse);
  EXPECT_EQ(failure_of("A\tNotAClass\n"), ErrorKind::Parse);
  try {
    parse_mapping("A\tSkill\nB\tNope\n", "x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostic().line, 2u);
  }
}

TEST(LoadMappings, ShippedFixturesReproduceTable) {
  auto ms = load_mappings(testing_support::data_path("mappings"));
  ASSERT_EQ(ms.size(), 3u);
  std::vector<RecallReport> reports;
  for (const auto& m : ms) reports.push_back(compute_recall(m));
  EXPECT_EQ(reports[0].schema_name, "OER-Commons");
  EXPECT_EQ(format_recall(reports[0].recall), "0.833");
  EXPECT_EQ(reports[1].schema_name, "SkillsCommons");
  EXPECT_EQ(format_recall(reports[1].recall), "0.857");
  EXPECT_EQ(reports[2].schema_name, "Merlot");
  EXPECT_EQ(format_recall(reports[2].recall), "0.875");

  EXPECT_EQ(recall_tsv(reports),
            "schema\trecall\ttp\tfn\nOER-Commons\t0.833\t5\t1\nSkillsCommons\t0.857\t6\t1\nMerlot\t0.875\t7\t1\n");
  std::string table = recall_table(reports);
  EXPECT_EQ(table.substr(0, table.find('\n')), "Schema         Recall  TP  FN");
}

TEST(LoadMappings, MissingDirectory) {
  EXPECT_THROW(load_mappings("/nonexistent/mappings"), Error);
}

TEST(RecallProperty, PermutationAndMonotonicity) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 1000; ++i) {
    SchemaMapping m = mapping(rng() % 20, rng() % 20);
    if (m.entries.empty()) continue;
    double base = compute_recall(m).recall;
    ASSERT_GE(base, 0.0);
    ASSERT_LE(base, 1.0);

    SchemaMapping shuffled = m;
    std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
    ASSERT_EQ(compute_recall(shuffled).recall, base);

    SchemaMapping more = m;
    more.entries.push_back({"extra", "Skill"});
    ASSERT_GE(compute_recall(more).recall, base);
    SchemaMapping less = m;
    less.entries.push_back({"extra", std::nullopt});
    ASSERT_LE(compute_recall(less).recall, base);
  }
}
