#include "educor/recommender.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "educor/error.hpp"

namespace educor {

namespace {

constexpr double kWeightTolerance = 1e-9;

void check_unit_weights(std::initializer_list<double> ws, const char* what) {
  double sum = 0.0;
  for (double w : ws) {
    if (!(w >= 0.0)) throw Error(ErrorKind::Config, std::string(what) + " weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw Error(ErrorKind::Config, std::string(what) + " weights must sum to 1");
  }
}

std::string local_name(const Iri& iri) {
  const std::string& s = iri.value();
  return s.substr(s.find_last_of("#/:") + 1);
}

bool better(const Recommendation& a, const Recommendation& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.resource < b.resource;
}

}  // namespace

void ScoringWeights::validate() const { check_unit_weights({difficulty, media, quality, duration}, "scoring"); }

double difficulty_match(int difficulty, int level) {
  return 1.0 - std::abs(difficulty - level) / 4.0;
}

double duration_fit(std::int64_t duration, std::int64_t preferred) {
  if (preferred <= 0) return duration == 0 ? 1.0 : 0.0;
  double rel = std::abs(static_cast<double>(duration - preferred)) / static_cast<double>(preferred);
  return 1.0 - std::min(1.0, rel);
}

double media_preference(const UserProfile& profile, MediaType media) {
  auto it = profile.media_preferences.find(media);
  return it == profile.media_preferences.end() ? 0.0 : it->second;
}

Recommendation score_resource(const EducationalResource& resource, const UserProfile& profile,
                              const ScoringWeights& weights) {
  Recommendation rec{.resource = resource.id};
  bool accessible = std::any_of(resource.accessibility.begin(), resource.accessibility.end(),
                                [&](const std::string& m) { return profile.access_modes.contains(m); });
  if (!accessible) {
    rec.excluded = true;
    rec.rationale = {{"accessibility", 0.0}};
    return rec;
  }
  double d = weights.difficulty * difficulty_match(resource.difficulty, profile.educational_level);
  double m = weights.media * media_preference(profile, resource.media);
  double q = weights.quality * resource.quality.score;
  double t = weights.duration * duration_fit(resource.duration_minutes, profile.preferred_duration_minutes);
  rec.rationale = {{"difficulty", d}, {"duration", t}, {"media", m}, {"quality", q}};
  rec.score = d + m + q + t;
  return rec;
}

std::vector<Recommendation> recommend(const Iri& topic, const UserProfile& profile, std::size_t n,
                                      const Catalog& catalog, const ScoringWeights& weights) {
  if (!catalog.topic(topic)) throw Error(ErrorKind::UnknownTopic, "unknown knowledge topic " + topic.value());
  std::vector<Recommendation> out;
  for (const EducationalResource* r : catalog.resources_of(topic)) {
    Recommendation rec = score_resource(*r, profile, weights);
    if (!rec.excluded) out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), better);
  if (out.size() > n) out.erase(out.begin() + static_cast<std::ptrdiff_t>(n), out.end());
  return out;
}

void PsychModel::validate() const {
  std::set<std::string> declared;
  for (const auto& ind : indicators) {
    if (!(ind.max > ind.min)) throw Error(ErrorKind::Config, "indicator " + ind.id + " needs min < max");
    if (!declared.insert(ind.id).second) throw Error(ErrorKind::Config, "indicator " + ind.id + " declared twice");
  }
  for (const auto& def : constructs) {
    if (def.contributions.empty()) throw Error(ErrorKind::Config, "construct " + def.id + " has no indicators");
    double sum = 0.0;
    for (const auto& c : def.contributions) {
      if (!declared.contains(c.indicator)) {
        throw Error(ErrorKind::UnknownIndicator,
                    "construct " + def.id + " refers to undeclared indicator " + c.indicator);
      }
      if (c.weight < 0.0 || c.weight > 1.0) {
        throw Error(ErrorKind::Config, "construct " + def.id + " has a weight outside [0,1]");
      }
      sum += c.weight;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) {
      throw Error(ErrorKind::Config, "weights of construct " + def.id + " must sum to 1");
    }
  }
}

std::map<std::string, double> score_constructs(const UserProfile& profile, const PsychModel& model) {
  model.validate();
  std::map<std::string, const IndicatorDecl*> decls;
  for (const auto& d : model.indicators) decls.emplace(d.id, &d);

  // Latest observation wins for dynamic indicators; static ones are unique.
  std::map<std::string, const Indicator*> current;
  for (const Indicator& ind : profile.indicators) {
    auto it = decls.find(ind.id);
    if (it == decls.end() || it->second->kind != ind.kind) continue;
    auto [slot, fresh] = current.try_emplace(ind.id, &ind);
    if (!fresh && ind.observed_at >= slot->second->observed_at) slot->second = &ind;
  }

  std::map<std::string, double> out = profile.constructs;
  for (const auto& def : model.constructs) {
    // Sum in indicator-id order so the result does not depend on list order.
    std::vector<std::pair<std::string, double>> terms;
    for (const auto& c : def.contributions) {
      double v = model.neutral;
      if (auto it = current.find(c.indicator); it != current.end()) {
        const IndicatorDecl& d = *decls.at(c.indicator);
        v = std::clamp((it->second->value - d.min) / (d.max - d.min), 0.0, 1.0);
        if (!c.positive) v = 1.0 - v;
      }
      terms.emplace_back(c.indicator, c.weight * v);
    }
    std::sort(terms.begin(), terms.end());
    double value = 0.0;
    for (const auto& [_, t] : terms) value += t;
    out[def.id] = std::clamp(value, 0.0, 1.0);
  }
  return out;
}

UserProfile update_preferences(const UserProfile& profile, const RatingEvent& event, const Catalog& catalog,
                               double alpha) {
  const EducationalResource* r = catalog.resource(event.resource);
  if (!r) throw Error(ErrorKind::UnknownResource, "unknown educational resource " + event.resource.value());
  if (!(event.rating >= 0.0 && event.rating <= 1.0)) {
    throw Error(ErrorKind::InvalidField, "rating must lie in [0,1]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::Config, "alpha must lie in [0,1]");
  UserProfile out = profile;
  double old = media_preference(profile, r->media);
  out.media_preferences[r->media] = std::clamp((1.0 - alpha) * old + alpha * event.rating, 0.0, 1.0);
  return out;
}

std::string normalize_answer(std::string_view answer) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : answer) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

TestLog TestLog::from_catalog(const Catalog& catalog) {
  TestLog log;
  for (const auto& [_, r] : catalog.results) log.record(r);
  return log;
}

std::string TestLog::unique_timestamp(const Iri& user, const Iri& test, const std::string& now) const {
  if (!used_.contains({user, test, now})) return now;
  for (std::size_t attempt = 2;; ++attempt) {
    std::string candidate = now + "#" + std::to_string(attempt);
    if (!used_.contains({user, test, candidate})) return candidate;
  }
}

std::size_t TestLog::attempts(const Iri& user, const Iri& test) const {
  auto it = attempts_.find({user, test});
  return it == attempts_.end() ? 0 : it->second;
}

void TestLog::record(const TestResult& result) {
  if (used_.insert({result.user, result.test, result.timestamp}).second) ++attempts_[{result.user, result.test}];
}

GradeOutcome grade_test(const Test& test, const std::map<Iri, std::string>& answers, const UserProfile& profile,
                        const std::string& now, TestLog& log) {
  if (test.exercises.empty()) throw Error(ErrorKind::EmptyTest, "test " + test.id.value() + " has no exercises");
  std::size_t correct = 0;
  for (const Exercise& ex : test.exercises) {
    auto it = answers.find(ex.id);
    if (it != answers.end() && normalize_answer(it->second) == normalize_answer(ex.answer)) ++correct;
  }
  double score = static_cast<double>(correct) / static_cast<double>(test.exercises.size());

  std::string attempt = std::to_string(log.attempts(profile.user, test.id) + 1);
  TestResult result{
      .id = Iri(profile.user.value() + "-result-" + local_name(test.id) + "-" + attempt),
      .user = profile.user,
      .test = test.id,
      .score = score,
      .timestamp = log.unique_timestamp(profile.user, test.id, now),
  };
  log.record(result);

  GradeOutcome out{result, profile};
  std::set<Iri> covered = test.topics;
  for (const Exercise& ex : test.exercises) covered.insert(ex.topic);
  for (const Iri& topic : covered) {
    double& m = out.profile.mastery[topic];
    m = std::max(m, score);
  }
  return out;
}

}  // namespace educor
