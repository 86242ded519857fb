#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "educor/graph.hpp"

namespace educor {

enum class MediaType { Video, Text, Audio, Interactive };

std::string_view to_string(MediaType media);
std::optional<MediaType> parse_media_type(std::string_view text);

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 5;

struct KnowledgeTopic {
  Iri id;
  std::string label;
  std::string domain;  // exact-match domain tag, e.g. "Mathematics"
  int difficulty = 1;  // 1..5
  std::vector<Iri> prerequisites;  // sorted, unique
  std::vector<Iri> resources;      // sorted, unique

  bool operator==(const KnowledgeTopic&) const = default;
};

struct QualityIndicator {
  double score = 0.5;
  std::int64_t rating_count = 0;

  bool operator==(const QualityIndicator&) const = default;
};

struct EducationalResource {
  Iri id;
  Iri topic;
  MediaType media = MediaType::Text;
  std::int64_t duration_minutes = 0;
  int difficulty = 1;
  QualityIndicator quality;
  std::set<std::string> accessibility{"text"};
  std::string source_url;

  bool operator==(const EducationalResource&) const = default;
};

struct Skill {
  Iri id;
  std::string label;
  std::set<Iri> required_topics;
  std::set<Iri> job_links;  // opaque labour-market job IRIs

  bool operator==(const Skill&) const = default;
};

struct Exercise {
  Iri id;
  std::string question;
  std::string answer;
  Iri topic;

  bool operator==(const Exercise&) const = default;
};

struct Test {
  Iri id;
  std::vector<Exercise> exercises;  // sorted by id
  std::set<Iri> topics;

  bool operator==(const Test&) const = default;
};

struct TestResult {
  Iri id;
  Iri user;
  Iri test;
  double score = 0.0;
  std::string timestamp;  // ISO-8601, optionally suffixed "#<attempt>"

  bool operator==(const TestResult&) const = default;
};

enum class IndicatorKind { Static, Dynamic };

std::string_view to_string(IndicatorKind kind);

struct Indicator {
  std::string id;
  IndicatorKind kind = IndicatorKind::Static;
  double value = 0.0;
  std::string observed_at;  // required for dynamic indicators

  auto operator<=>(const Indicator&) const = default;
};

struct UserProfile {
  Iri id;
  Iri user;
  std::map<MediaType, double> media_preferences;
  std::int64_t preferred_duration_minutes = 30;
  std::set<std::string> access_modes{"text"};
  std::set<Iri> goals;
  std::set<std::string> objectives;  // free-text learning objectives
  int educational_level = 1;
  std::map<Iri, double> mastery;
  std::vector<Indicator> indicators;  // sorted
  std::map<std::string, double> constructs;

  bool operator==(const UserProfile&) const = default;
};

struct Recommendation {
  Iri resource;
  double score = 0.0;
  /// (criterion, contribution), sorted by criterion; contributions sum to score.
  std::vector<std::pair<std::string, double>> rationale;
  bool excluded = false;

  bool operator==(const Recommendation&) const = default;
};

struct LearningPath {
  Iri id;
  Iri goal;
  std::vector<Iri> topics;
  double weight = 0.0;
  std::map<Iri, std::vector<Recommendation>> recommendations;

  bool operator==(const LearningPath&) const = default;
};

/// Reads the entity rooted at `node`. Throws EntityError with kind
/// MissingType (no rdf:type for the class), MissingRequiredField or
/// InvalidField (wrong term kind, bad value, or a repeated functional property).
template <class Entity>
Entity typed_view(const Graph& graph, const Iri& node);

template <> KnowledgeTopic typed_view<KnowledgeTopic>(const Graph&, const Iri&);
template <> EducationalResource typed_view<EducationalResource>(const Graph&, const Iri&);
template <> Skill typed_view<Skill>(const Graph&, const Iri&);
template <> Exercise typed_view<Exercise>(const Graph&, const Iri&);
template <> Test typed_view<Test>(const Graph&, const Iri&);
template <> TestResult typed_view<TestResult>(const Graph&, const Iri&);
template <> UserProfile typed_view<UserProfile>(const Graph&, const Iri&);
template <> LearningPath typed_view<LearningPath>(const Graph&, const Iri&);

/// Triples that describe the entity; typed_view over them returns the entity.
/// Nested nodes (profile parameters, path steps) get IRIs derived from the
/// owner's IRI.
std::vector<Triple> to_triples(const KnowledgeTopic& e);
std::vector<Triple> to_triples(const EducationalResource& e);
std::vector<Triple> to_triples(const Skill& e);
std::vector<Triple> to_triples(const Exercise& e);
std::vector<Triple> to_triples(const Test& e);
std::vector<Triple> to_triples(const TestResult& e);
std::vector<Triple> to_triples(const UserProfile& e);
std::vector<Triple> to_triples(const LearningPath& e);

template <class Entity>
void add_entity(Graph& graph, const Entity& entity) {
  for (auto& t : to_triples(entity)) graph.insert(std::move(t));
}

}  // namespace educor
