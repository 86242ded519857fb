#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "educor/catalog.hpp"
#include "educor/recommender.hpp"

namespace educor {

/// Criterion weights for ranking learning paths. The four criteria are this
/// library's reading of "recommendation requirements": how well topic
/// difficulty fits the learner, how well the best resources fit their media
/// preferences, resource quality, and path length.
struct RecommendationRequirements {
  double difficulty_fit = 0.25;
  double preference_fit = 0.25;
  double quality = 0.25;
  double path_length = 0.25;
  std::size_t max_paths = 3;

  /// Throws Error(InvalidRequirements) unless all weights are >= 0, they sum
  /// to 1 within 1e-9 and max_paths >= 1.
  void validate() const;
};

/// The goal's required topics closed under hasPrerequisite. A skill goal
/// starts from its required topics, a topic goal from itself.
/// Throws Error(UnknownGoal), or Error(UnresolvedTopic) for a dangling link.
std::set<Iri> required_topics(const Iri& goal, const Catalog& catalog);

struct PathComponents {
  double difficulty_fit = 0.0;
  double preference_fit = 0.0;
  double mean_quality = 0.0;
  double length_score = 0.0;
};

/// Components for the topics in any order; `n_min` is the size of the
/// required topic set. Topics without an accessible resource contribute 0 to
/// preference and quality.
PathComponents path_components(const std::vector<Iri>& topics, std::size_t n_min, const UserProfile& profile,
                               const Catalog& catalog, const ScoringWeights& scoring = {});

double combine(const PathComponents& c, const RecommendationRequirements& req);

/// Weight in [0,1]. n_min comes from the path's goal; when the goal does not
/// resolve, the path's own length is used.
double weigh_path(const LearningPath& path, const UserProfile& profile, const RecommendationRequirements& req,
                  const Catalog& catalog, const ScoringWeights& scoring = {});

struct EnumerateOptions {
  bool enforce_endpoint_axiom = true;
  ScoringWeights scoring;
};

/// Up to req.max_paths topological orders of required_topics(goal), best
/// weight first, ties by the lexicographic topic-IRI sequence. Each path gets
/// the top accessible resource per topic as its recommendations.
/// Throws Error(CyclicPrerequisites), or Error(NoFeasibleOrder) when the
/// endpoint axiom rules out every order.
std::vector<LearningPath> enumerate_paths(const Iri& goal, const UserProfile& profile,
                                          const RecommendationRequirements& req, const Catalog& catalog,
                                          const EnumerateOptions& options = {});

struct PathPlan {
  std::vector<LearningPath> paths;
  bool relaxed = false;  // endpoint axiom dropped because no order satisfied it
};

/// enumerate_paths, retrying without the endpoint axiom on NoFeasibleOrder.
PathPlan plan_paths(const Iri& goal, const UserProfile& profile, const RecommendationRequirements& req,
                    const Catalog& catalog, const ScoringWeights& scoring = {});

/// Re-weighs stored candidate paths and returns the best req.max_paths.
std::vector<LearningPath> rank_paths(std::vector<LearningPath> candidates, const UserProfile& profile,
                                     const RecommendationRequirements& req, const Catalog& catalog,
                                     const ScoringWeights& scoring = {});

/// Orders paths by weight descending, then topic sequence.
bool path_precedes(const LearningPath& a, const LearningPath& b);

}  // namespace educor
