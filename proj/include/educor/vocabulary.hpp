#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "educor/term.hpp"

namespace educor {

inline constexpr std::string_view kEducorNs = "https://github.com/tibonto/educor#";
inline constexpr std::string_view kLrmiAlignmentNs = "http://purl.org/dcx/lrmi-vocabs/alignmentType/";
inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwlNs = "http://www.w3.org/2002/07/owl#";

Iri ec_iri(std::string_view local);

/// IRIs for every class and property the engine reads or writes.
struct Vocabulary {
  Iri rdf_type;
  Iri rdfs_label;

  // classes
  Iri KnowledgeTopic;
  Iri EducationalResource;
  Iri Skill;
  Iri Test;
  Iri Exercise;
  Iri TestResult;
  Iri User;
  Iri UserProfile;
  Iri AcademicParameter;
  Iri AcademicIndicator;
  Iri LearningPreference;
  Iri StaticIndicator;
  Iri DynamicIndicator;
  Iri PsychologicalConstruct;
  Iri LearningPath;
  Iri PathStep;
  Iri Recommendation;

  // knowledge topic / resource
  Iri domain;
  Iri difficulty;
  Iri hasPrerequisite;
  Iri hasEducationalResource;
  Iri refersToTopic;
  Iri mediaType;
  Iri durationMinutes;
  Iri qualityScore;
  Iri ratingCount;
  Iri accessMode;
  Iri sourceUrl;

  // skill
  Iri requiresKnowledgeTopic;
  Iri linkedToJob;

  // test
  Iri consistsOf;
  Iri testKnowledgeTopic;
  Iri question;
  Iri answer;
  Iri resultOfUser;
  Iri resultOfTest;
  Iri score;
  Iri timestamp;
  Iri solves;

  // user profile
  Iri hasProfile;
  Iri storedIn;
  Iri educationalLevel;
  Iri masteryOf;
  Iri masteryLevel;
  Iri preferenceWeight;
  Iri preferredDuration;
  Iri hasLearningGoal;
  Iri hasLearningObjective;
  Iri indicatorId;
  Iri indicatorValue;
  Iri observedAt;
  Iri constructId;
  Iri constructValue;

  // learning path / recommendation
  Iri pathWeight;
  Iri consistsOfKnowledge;
  Iri hasStep;
  Iri position;
  Iri stepTopic;
  Iri hasRecommendation;
  Iri recommendsResource;
  Iri recommendationScore;
  Iri rank;
  Iri rationale;
};

const Vocabulary& vocab();

/// Local names of every class in the ontology, including classes that only
/// appear in the published vocabulary (Theory, Methodology, ...). Used to
/// check gold-standard mappings.
const std::vector<std::string>& ontology_class_names();

}  // namespace educor
