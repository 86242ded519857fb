#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "educor/catalog.hpp"

namespace educor {

/// Weights of the four resource-scoring criteria. Must be non-negative and
/// sum to 1.
struct ScoringWeights {
  double difficulty = 0.4;
  double media = 0.3;
  double quality = 0.2;
  double duration = 0.1;

  void validate() const;  // throws Error(Config)
};

inline constexpr double kDefaultAlpha = 0.3;
inline constexpr double kNeutralFill = 0.5;

/// 1 - |difficulty - level| / 4.
double difficulty_match(int difficulty, int level);

/// 1 - min(1, |duration - preferred| / preferred). A zero preference only
/// matches zero-length resources.
double duration_fit(std::int64_t duration, std::int64_t preferred);

/// Preference weight of `media` in the profile; 0 when never recorded.
double media_preference(const UserProfile& profile, MediaType media);

/// Resources sharing no access mode with the profile are excluded with
/// score 0 and the single rationale entry ("accessibility", 0). Otherwise the
/// rationale lists the contributions of "difficulty", "duration", "media" and
/// "quality", which sum to the score.
Recommendation score_resource(const EducationalResource& resource, const UserProfile& profile,
                              const ScoringWeights& weights = {});

/// Top `n` accessible resources of `topic`, by score then resource IRI.
/// Throws Error(UnknownTopic).
std::vector<Recommendation> recommend(const Iri& topic, const UserProfile& profile, std::size_t n,
                                      const Catalog& catalog, const ScoringWeights& weights = {});

struct IndicatorDecl {
  std::string id;
  IndicatorKind kind = IndicatorKind::Static;
  double min = 0.0;  // declared range used for min-max normalization
  double max = 1.0;
};

struct Contribution {
  std::string indicator;
  double weight = 0.0;
  bool positive = true;
};

struct ConstructDefinition {
  std::string id;
  std::vector<Contribution> contributions;  // weights sum to 1
};

struct PsychModel {
  std::vector<IndicatorDecl> indicators;
  std::vector<ConstructDefinition> constructs;
  double neutral = kNeutralFill;

  /// Throws Error(UnknownIndicator) for an undeclared indicator and
  /// Error(Config) for bad ranges or weights.
  void validate() const;
};

/// Profile constructs with every defined construct recomputed:
/// sum of weight * (v if positive else 1 - v) over contributions, where v is
/// the normalized indicator value (latest observation for dynamic ones) and
/// an absent indicator counts as `neutral`.
std::map<std::string, double> score_constructs(const UserProfile& profile, const PsychModel& model);

struct RatingEvent {
  Iri user;
  Iri resource;
  double rating = 0.0;  // [0,1]
  std::string timestamp;
};

/// Exponential moving average of the preference for the rated resource's
/// media type. Throws Error(UnknownResource), Error(InvalidField) for a rating
/// outside [0,1].
UserProfile update_preferences(const UserProfile& profile, const RatingEvent& event, const Catalog& catalog,
                               double alpha = kDefaultAlpha);

/// Lowercases ASCII letters, trims and collapses internal whitespace runs.
std::string normalize_answer(std::string_view answer);

/// Timestamps already used per (user, test); hands out unique ones.
class TestLog {
 public:
  TestLog() = default;
  static TestLog from_catalog(const Catalog& catalog);

  /// `now` if unused for this user and test, else `now#2`, `now#3`, ...
  std::string unique_timestamp(const Iri& user, const Iri& test, const std::string& now) const;
  std::size_t attempts(const Iri& user, const Iri& test) const;
  void record(const TestResult& result);

 private:
  std::set<std::tuple<Iri, Iri, std::string>> used_;
  std::map<std::pair<Iri, Iri>, std::size_t> attempts_;
};

struct GradeOutcome {
  TestResult result;
  UserProfile profile;
};

/// Score = correct / total exercises (unanswered counts as wrong). Mastery of
/// each covered topic becomes max(old, score). The result is recorded in `log`.
/// Throws Error(EmptyTest).
GradeOutcome grade_test(const Test& test, const std::map<Iri, std::string>& answers, const UserProfile& profile,
                        const std::string& now, TestLog& log);

}  // namespace educor
