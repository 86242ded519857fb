#include "educor/vocabulary.hpp"

namespace educor {

Iri ec_iri(std::string_view local) {
  std::string s(kEducorNs);
  s += local;
  return Iri(std::move(s));
}

namespace {

Iri ns_iri(std::string_view ns, std::string_view local) {
  std::string s(ns);
  s += local;
  return Iri(std::move(s));
}

Vocabulary make_vocabulary() {
  auto ec = [](std::string_view local) { return ec_iri(local); };
  return Vocabulary{
      .rdf_type = ns_iri(kRdfNs, "type"),
      .rdfs_label = ns_iri(kRdfsNs, "label"),
      .KnowledgeTopic = ec("KnowledgeTopic"),
      .EducationalResource = ec("EducationalResource"),
      .Skill = ec("Skill"),
      .Test = ec("Test"),
      .Exercise = ec("Exercise"),
      .TestResult = ec("TestResult"),
      .User = ec("User"),
      .UserProfile = ec("UserProfile"),
      .AcademicParameter = ec("AcademicParameter"),
      .AcademicIndicator = ec("AcademicIndicator"),
      .LearningPreference = ec("LearningPreference"),
      .StaticIndicator = ec("StaticIndicator"),
      .DynamicIndicator = ec("DynamicIndicator"),
      .PsychologicalConstruct = ec("PsychologicalConstruct"),
      .LearningPath = ec("LearningPath"),
      .PathStep = ec("PathStep"),
      .Recommendation = ec("Recommendation"),
      .domain = ec("domain"),
      .difficulty = ec("difficulty"),
      .hasPrerequisite = ec("hasPrerequisite"),
      .hasEducationalResource = ec("hasEducationalResource"),
      .refersToTopic = ec("refersToTopic"),
      .mediaType = ec("mediaType"),
      .durationMinutes = ec("durationMinutes"),
      .qualityScore = ec("qualityScore"),
      .ratingCount = ec("ratingCount"),
      .accessMode = ec("accessMode"),
      .sourceUrl = ec("sourceUrl"),
      .requiresKnowledgeTopic = ec("requiresKnowledgeTopic"),
      .linkedToJob = ec("linkedToJob"),
      .consistsOf = ec("consistsOf"),
      .testKnowledgeTopic = ec("testKnowledgeTopic"),
      .question = ec("question"),
      .answer = ec("answer"),
      .resultOfUser = ec("resultOfUser"),
      .resultOfTest = ec("resultOfTest"),
      .score = ec("score"),
      .timestamp = ec("timestamp"),
      .solves = ec("solves"),
      .hasProfile = ec("hasProfile"),
      .storedIn = ec("storedIn"),
      .educationalLevel = ns_iri(kLrmiAlignmentNs, "educationalLevel"),
      .masteryOf = ec("masteryOf"),
      .masteryLevel = ec("masteryLevel"),
      .preferenceWeight = ec("preferenceWeight"),
      .preferredDuration = ec("preferredDuration"),
      .hasLearningGoal = ec("hasLearningGoal"),
      .hasLearningObjective = ec("hasLearningObjective"),
      .indicatorId = ec("indicatorId"),
      .indicatorValue = ec("indicatorValue"),
      .observedAt = ec("observedAt"),
      .constructId = ec("constructId"),
      .constructValue = ec("constructValue"),
      .pathWeight = ec("pathWeight"),
      .consistsOfKnowledge = ec("consistsOfKnowledge"),
      .hasStep = ec("hasStep"),
      .position = ec("position"),
      .stepTopic = ec("stepTopic"),
      .hasRecommendation = ec("hasRecommendation"),
      .recommendsResource = ec("recommendsResource"),
      .recommendationScore = ec("recommendationScore"),
      .rank = ec("rank"),
      .rationale = ec("rationale"),
  };
}

}  // namespace

const Vocabulary& vocab() {
  static const Vocabulary v = make_vocabulary();
  return v;
}

const std::vector<std::string>& ontology_class_names() {
  static const std::vector<std::string> names = {
      "AcademicIndicator", "AcademicParameter", "Accessibility", "DynamicIndicator",
      "EducationalResource", "Exercise", "KnowledgeTopic", "LearningGoal",
      "LearningObjective", "LearningOutcome", "LearningPath", "LearningPreference",
      "Methodology", "MultimediaData", "PathStep", "PsychologicalConstruct",
      "PsychologicalIndicator", "PsychologicalParameter", "QualityIndicator",
      "Recommendation", "Skill", "StaticIndicator", "Test", "TestResult", "Theory",
      "User", "UserProfile"};
  return names;
}

}  // namespace educor
