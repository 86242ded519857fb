#include "educor/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>

#include "educor/error.hpp"

namespace educor {

void RecommendationRequirements::validate() const {
  double ws[] = {difficulty_fit, preference_fit, quality, path_length};
  double sum = 0.0;
  for (double w : ws) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidRequirements, "requirement weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::InvalidRequirements, "requirement weights must sum to 1");
  if (max_paths < 1) throw Error(ErrorKind::InvalidRequirements, "max_paths must be at least 1");
}

std::set<Iri> required_topics(const Iri& goal, const Catalog& catalog) {
  std::vector<Iri> todo;
  if (const Skill* skill = catalog.skill(goal)) {
    todo.assign(skill->required_topics.begin(), skill->required_topics.end());
  } else if (catalog.topic(goal)) {
    todo.push_back(goal);
  } else {
    throw Error(ErrorKind::UnknownGoal, "goal " + goal.value() + " is neither a skill nor a knowledge topic");
  }
  std::set<Iri> out;
  while (!todo.empty()) {
    Iri id = std::move(todo.back());
    todo.pop_back();
    if (!out.insert(id).second) continue;
    const KnowledgeTopic* t = catalog.topic(id);
    if (!t) throw Error(ErrorKind::UnresolvedTopic, "required topic " + id.value() + " is not a knowledge topic");
    for (const Iri& pre : t->prerequisites) {
      if (!out.contains(pre)) todo.push_back(pre);
    }
  }
  return out;
}

namespace {

// Sums in ascending value order so the total is independent of topic order.
double mean_of(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

PathComponents path_components(const std::vector<Iri>& topics, std::size_t n_min, const UserProfile& profile,
                               const Catalog& catalog, const ScoringWeights& scoring) {
  std::vector<double> dist, pref, qual;
  for (const Iri& id : topics) {
    const KnowledgeTopic* t = catalog.topic(id);
    if (!t) throw Error(ErrorKind::UnresolvedTopic, "path topic " + id.value() + " is not a knowledge topic");
    dist.push_back(std::abs(t->difficulty - profile.educational_level) / 4.0);
    auto best = recommend(id, profile, 1, catalog, scoring);
    if (best.empty()) {
      pref.push_back(0.0);
      qual.push_back(0.0);
    } else {
      const EducationalResource& r = *catalog.resource(best.front().resource);
      pref.push_back(media_preference(profile, r.media));
      qual.push_back(r.quality.score);
    }
  }
  PathComponents c;
  c.difficulty_fit = std::clamp(1.0 - mean_of(dist), 0.0, 1.0);
  c.preference_fit = mean_of(pref);
  c.mean_quality = mean_of(qual);
  auto n = static_cast<double>(topics.size());
  c.length_score = 1.0 / (1.0 + std::abs(n - static_cast<double>(n_min)));
  return c;
}

double combine(const PathComponents& c, const RecommendationRequirements& req) {
  double w = req.difficulty_fit * c.difficulty_fit + req.preference_fit * c.preference_fit +
             req.quality * c.mean_quality + req.path_length * c.length_score;
  return std::clamp(w, 0.0, 1.0);
}

double weigh_path(const LearningPath& path, const UserProfile& profile, const RecommendationRequirements& req,
                  const Catalog& catalog, const ScoringWeights& scoring) {
  std::size_t n_min = path.topics.size();
  try {
    n_min = required_topics(path.goal, catalog).size();
  } catch (const Error&) {
  }
  return combine(path_components(path.topics, n_min, profile, catalog, scoring), req);
}

bool path_precedes(const LearningPath& a, const LearningPath& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.topics < b.topics;
}

namespace {

struct Node {
  double bound;
  std::vector<std::uint8_t> prefix;  // indices into the IRI-sorted topic list
};

// Pops the highest bound first, then the lexicographically smallest prefix.
struct Worse {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.prefix > b.prefix;
  }
};

class Search {
 public:
  Search(std::vector<const KnowledgeTopic*> topics, bool enforce_axiom)
      : topics_(std::move(topics)), enforce_(enforce_axiom) {
    std::map<Iri, std::size_t> index;
    for (std::size_t i = 0; i < topics_.size(); ++i) index.emplace(topics_[i]->id, i);
    pre_.resize(topics_.size());
    for (std::size_t i = 0; i < topics_.size(); ++i) {
      for (const Iri& p : topics_[i]->prerequisites) pre_[i].push_back(index.at(p));
    }
    std::map<std::string, int> domains;
    for (const auto* t : topics_) domains.emplace(t->domain, 0);
    int next = 0;
    for (auto& [_, id] : domains) id = next++;
    for (const auto* t : topics_) domain_.push_back(domains.at(t->domain));
    domain_count_ = static_cast<std::size_t>(next);
  }

  bool acyclic() const {
    std::vector<std::size_t> indeg(topics_.size(), 0);
    for (std::size_t i = 0; i < topics_.size(); ++i) indeg[i] = pre_[i].size();
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < topics_.size(); ++i) {
      if (indeg[i] == 0) ready.push_back(i);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
      std::size_t i = ready.back();
      ready.pop_back();
      ++seen;
      for (std::size_t j = 0; j < topics_.size(); ++j) {
        for (std::size_t p : pre_[j]) {
          if (p == i && --indeg[j] == 0) ready.push_back(j);
        }
      }
    }
    return seen == topics_.size();
  }

  /// Up to k complete orders. Every completion of a prefix covers the same
  /// topic set, so the exact weight is also a tight admissible bound and the
  /// frontier pops complete orders best-first in lexicographic order.
  std::vector<std::vector<std::uint8_t>> run(double bound, std::size_t k) {
    std::vector<std::vector<std::uint8_t>> out;
    std::priority_queue<Node, std::vector<Node>, Worse> frontier;
    frontier.push({bound, {}});
    while (!frontier.empty() && out.size() < k) {
      Node node = frontier.top();
      frontier.pop();
      if (node.prefix.size() == topics_.size()) {
        out.push_back(std::move(node.prefix));
        continue;
      }
      std::vector<bool> placed(topics_.size(), false);
      for (auto i : node.prefix) placed[i] = true;
      for (std::size_t i = 0; i < topics_.size(); ++i) {
        if (placed[i]) continue;
        if (!std::all_of(pre_[i].begin(), pre_[i].end(), [&](std::size_t p) { return placed[p]; })) continue;
        std::vector<std::uint8_t> next = node.prefix;
        next.push_back(static_cast<std::uint8_t>(i));
        if (enforce_ && !endpoints_reachable(next)) continue;
        frontier.push({node.bound, std::move(next)});
      }
    }
    return out;
  }

 private:
  // Necessary condition for the endpoint axiom: every domain whose first
  // topic is fixed still ends at a level no lower than that first topic.
  bool endpoints_reachable(const std::vector<std::uint8_t>& prefix) const {
    std::vector<int> first(domain_count_, -1), last(domain_count_, -1);
    std::vector<bool> placed(topics_.size(), false);
    for (auto i : prefix) {
      placed[i] = true;
      int d = domain_[i];
      if (first[d] < 0) first[d] = topics_[i]->difficulty;
      last[d] = topics_[i]->difficulty;
    }
    std::vector<int> best_remaining(domain_count_, -1);
    for (std::size_t i = 0; i < topics_.size(); ++i) {
      if (!placed[i]) best_remaining[domain_[i]] = std::max(best_remaining[domain_[i]], topics_[i]->difficulty);
    }
    for (std::size_t d = 0; d < domain_count_; ++d) {
      if (first[d] < 0) continue;
      int reachable = best_remaining[d] >= 0 ? best_remaining[d] : last[d];
      if (reachable < first[d]) return false;
    }
    return true;
  }

  std::vector<const KnowledgeTopic*> topics_;
  bool enforce_;
  std::vector<std::vector<std::size_t>> pre_;
  std::vector<int> domain_;
  std::size_t domain_count_ = 0;
};

}  // namespace

std::vector<LearningPath> enumerate_paths(const Iri& goal, const UserProfile& profile,
                                          const RecommendationRequirements& req, const Catalog& catalog,
                                          const EnumerateOptions& options) {
  req.validate();
  std::set<Iri> required = required_topics(goal, catalog);
  if (required.size() > 255) throw Error(ErrorKind::Config, "goal requires more than 255 topics");
  std::vector<const KnowledgeTopic*> topics;
  for (const Iri& id : required) topics.push_back(catalog.topic(id));

  Search search(topics, options.enforce_endpoint_axiom);
  if (!search.acyclic()) {
    throw Error(ErrorKind::CyclicPrerequisites, "prerequisites required by " + goal.value() + " form a cycle");
  }
  std::vector<Iri> all(required.begin(), required.end());
  double weight = combine(path_components(all, all.size(), profile, catalog, options.scoring), req);

  auto orders = search.run(weight, req.max_paths);
  if (orders.empty()) {
    throw Error(ErrorKind::NoFeasibleOrder,
                "every prerequisite order for " + goal.value() + " ends a domain below its starting level");
  }

  std::map<Iri, std::vector<Recommendation>> recs;
  for (const Iri& id : all) recs[id] = recommend(id, profile, 1, catalog, options.scoring);

  std::vector<LearningPath> out;
  for (std::size_t rank = 0; rank < orders.size(); ++rank) {
    LearningPath p{.id = Iri(profile.user.value() + "-path-" + std::to_string(rank + 1)), .goal = goal};
    for (auto i : orders[rank]) p.topics.push_back(topics[i]->id);
    p.weight = weight;
    p.recommendations = recs;
    out.push_back(std::move(p));
  }
  return out;
}

PathPlan plan_paths(const Iri& goal, const UserProfile& profile, const RecommendationRequirements& req,
                    const Catalog& catalog, const ScoringWeights& scoring) {
  try {
    return {enumerate_paths(goal, profile, req, catalog, {true, scoring}), false};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoFeasibleOrder) throw;
  }
  return {enumerate_paths(goal, profile, req, catalog, {false, scoring}), true};
}

std::vector<LearningPath> rank_paths(std::vector<LearningPath> candidates, const UserProfile& profile,
                                     const RecommendationRequirements& req, const Catalog& catalog,
                                     const ScoringWeights& scoring) {
  req.validate();
  for (auto& p : candidates) p.weight = weigh_path(p, profile, req, catalog, scoring);
  std::sort(candidates.begin(), candidates.end(), path_precedes);
  if (candidates.size() > req.max_paths) candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(req.max_paths), candidates.end());
  return candidates;
}

}  // namespace educor
