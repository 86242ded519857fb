#include "educor/entities.hpp"

#include <algorithm>

#include "educor/error.hpp"
#include "educor/vocabulary.hpp"

namespace educor {

std::string_view to_string(MediaType media) {
  switch (media) {
    case MediaType::Video: return "video";
    case MediaType::Text: return "text";
    case MediaType::Audio: return "audio";
    case MediaType::Interactive: return "interactive";
  }
  return "text";
}

std::optional<MediaType> parse_media_type(std::string_view text) {
  if (text == "video") return MediaType::Video;
  if (text == "text") return MediaType::Text;
  if (text == "audio") return MediaType::Audio;
  if (text == "interactive") return MediaType::Interactive;
  return std::nullopt;
}

std::string_view to_string(IndicatorKind kind) {
  return kind == IndicatorKind::Static ? "static" : "dynamic";
}

namespace {

// Field readers. All of them throw EntityError naming the field.

[[noreturn]] void invalid(const std::string& field, const Iri& node, const std::string& why) {
  throw EntityError(ErrorKind::InvalidField, field, field + " of " + node.value() + ": " + why);
}

void require_type(const Graph& g, const Iri& node, const Iri& cls) {
  if (!g.has_type(node, cls)) {
    throw EntityError(ErrorKind::MissingType, "rdf:type",
                      node.value() + " is not typed " + cls.value());
  }
}

std::optional<Term> optional_one(const Graph& g, const Iri& node, const Iri& prop,
                                 const std::string& field) {
  auto values = g.objects(node, prop);
  if (values.empty()) return std::nullopt;
  if (values.size() > 1) invalid(field, node, "expected a single value");
  return values.front();
}

Term required_one(const Graph& g, const Iri& node, const Iri& prop, const std::string& field) {
  auto value = optional_one(g, node, prop, field);
  if (!value) {
    throw EntityError(ErrorKind::MissingRequiredField, field,
                      node.value() + " lacks required field " + field);
  }
  return *value;
}

Iri as_iri(const Term& t, const Iri& node, const std::string& field) {
  if (!t.is_iri()) invalid(field, node, "expected an IRI");
  return Iri(t.value());
}

std::string as_text(const Term& t, const Iri& node, const std::string& field) {
  if (!t.is_literal() || t.is_numeric()) invalid(field, node, "expected a string literal");
  return t.value();
}

std::int64_t as_int(const Term& t, const Iri& node, const std::string& field) {
  auto v = t.as_integer();
  if (!v) invalid(field, node, "expected an integer literal");
  return *v;
}

double as_real(const Term& t, const Iri& node, const std::string& field) {
  auto v = t.as_number();
  if (!v) invalid(field, node, "expected a numeric literal");
  return *v;
}

int as_level(const Term& t, const Iri& node, const std::string& field) {
  auto v = as_int(t, node, field);
  if (v < kMinLevel || v > kMaxLevel) invalid(field, node, "level outside 1..5");
  return static_cast<int>(v);
}

double as_unit(const Term& t, const Iri& node, const std::string& field) {
  double v = as_real(t, node, field);
  if (v < 0.0 || v > 1.0) invalid(field, node, "value outside [0,1]");
  return v;
}

std::vector<Iri> iri_list(const Graph& g, const Iri& node, const Iri& prop, const std::string& field) {
  std::vector<Iri> out;
  for (auto& t : g.objects(node, prop)) out.push_back(as_iri(t, node, field));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> text_set(const Graph& g, const Iri& node, const Iri& prop, const std::string& field) {
  std::set<std::string> out;
  for (auto& t : g.objects(node, prop)) out.insert(as_text(t, node, field));
  return out;
}

std::string optional_text(const Graph& g, const Iri& node, const Iri& prop, const std::string& field) {
  auto t = optional_one(g, node, prop, field);
  return t ? as_text(*t, node, field) : std::string();
}

Iri child(const Iri& owner, std::string_view suffix) {
  return Iri(owner.value() + "-" + std::string(suffix));
}

struct Emitter {
  std::vector<Triple> out;

  void add(const Iri& s, const Iri& p, Term o) { out.push_back({s, p, std::move(o)}); }
  void type(const Iri& s, const Iri& cls) { add(s, vocab().rdf_type, Term(cls)); }
  void text(const Iri& s, const Iri& p, const std::string& v) {
    if (!v.empty()) add(s, p, Term::string(v));
  }
};

}  // namespace

template <>
KnowledgeTopic typed_view<KnowledgeTopic>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.KnowledgeTopic);
  KnowledgeTopic t{.id = node};
  t.label = optional_text(g, node, v.rdfs_label, "label");
  t.domain = as_text(required_one(g, node, v.domain, "domain"), node, "domain");
  t.difficulty = as_level(required_one(g, node, v.difficulty, "difficulty"), node, "difficulty");
  t.prerequisites = iri_list(g, node, v.hasPrerequisite, "prerequisites");
  t.resources = iri_list(g, node, v.hasEducationalResource, "resources");
  return t;
}

std::vector<Triple> to_triples(const KnowledgeTopic& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.KnowledgeTopic);
  em.text(e.id, v.rdfs_label, e.label);
  em.add(e.id, v.domain, Term::string(e.domain));
  em.add(e.id, v.difficulty, Term::integer(e.difficulty));
  for (auto& p : e.prerequisites) em.add(e.id, v.hasPrerequisite, Term(p));
  for (auto& r : e.resources) em.add(e.id, v.hasEducationalResource, Term(r));
  return std::move(em.out);
}

template <>
EducationalResource typed_view<EducationalResource>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.EducationalResource);
  Term topic = required_one(g, node, v.refersToTopic, "topic");
  EducationalResource r{.id = node, .topic = as_iri(topic, node, "topic")};
  auto media_text = as_text(required_one(g, node, v.mediaType, "mediaType"), node, "mediaType");
  auto media = parse_media_type(media_text);
  if (!media) invalid("mediaType", node, "unknown media type '" + media_text + "'");
  r.media = *media;
  r.duration_minutes = as_int(required_one(g, node, v.durationMinutes, "durationMinutes"), node,
                              "durationMinutes");
  if (r.duration_minutes < 0) invalid("durationMinutes", node, "negative duration");
  r.difficulty = as_level(required_one(g, node, v.difficulty, "difficulty"), node, "difficulty");
  if (auto q = optional_one(g, node, v.qualityScore, "quality")) r.quality.score = as_unit(*q, node, "quality");
  if (auto c = optional_one(g, node, v.ratingCount, "ratingCount")) {
    r.quality.rating_count = as_int(*c, node, "ratingCount");
    if (r.quality.rating_count < 0) invalid("ratingCount", node, "negative rating count");
  }
  auto modes = text_set(g, node, v.accessMode, "accessibility");
  if (!modes.empty()) r.accessibility = std::move(modes);
  r.source_url = optional_text(g, node, v.sourceUrl, "sourceUrl");
  return r;
}

std::vector<Triple> to_triples(const EducationalResource& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.EducationalResource);
  em.add(e.id, v.refersToTopic, Term(e.topic));
  em.add(e.id, v.mediaType, Term::string(std::string(to_string(e.media))));
  em.add(e.id, v.durationMinutes, Term::integer(e.duration_minutes));
  em.add(e.id, v.difficulty, Term::integer(e.difficulty));
  em.add(e.id, v.qualityScore, Term::decimal(e.quality.score));
  em.add(e.id, v.ratingCount, Term::integer(e.quality.rating_count));
  for (auto& m : e.accessibility) em.add(e.id, v.accessMode, Term::string(m));
  em.text(e.id, v.sourceUrl, e.source_url);
  return std::move(em.out);
}

template <>
Skill typed_view<Skill>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.Skill);
  Skill s{.id = node};
  s.label = optional_text(g, node, v.rdfs_label, "label");
  for (auto& t : iri_list(g, node, v.requiresKnowledgeTopic, "requiredTopics")) s.required_topics.insert(t);
  for (auto& j : iri_list(g, node, v.linkedToJob, "jobLinks")) s.job_links.insert(j);
  return s;
}

std::vector<Triple> to_triples(const Skill& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.Skill);
  em.text(e.id, v.rdfs_label, e.label);
  for (auto& t : e.required_topics) em.add(e.id, v.requiresKnowledgeTopic, Term(t));
  for (auto& j : e.job_links) em.add(e.id, v.linkedToJob, Term(j));
  return std::move(em.out);
}

template <>
Exercise typed_view<Exercise>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.Exercise);
  Term topic = required_one(g, node, v.refersToTopic, "topic");
  Exercise x{.id = node,
             .question = as_text(required_one(g, node, v.question, "question"), node, "question"),
             .answer = as_text(required_one(g, node, v.answer, "answer"), node, "answer"),
             .topic = as_iri(topic, node, "topic")};
  return x;
}

std::vector<Triple> to_triples(const Exercise& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.Exercise);
  em.add(e.id, v.question, Term::string(e.question));
  em.add(e.id, v.answer, Term::string(e.answer));
  em.add(e.id, v.refersToTopic, Term(e.topic));
  return std::move(em.out);
}

template <>
Test typed_view<Test>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.Test);
  Test t{.id = node};
  for (auto& x : iri_list(g, node, v.consistsOf, "exercises")) t.exercises.push_back(typed_view<Exercise>(g, x));
  if (t.exercises.empty()) {
    throw EntityError(ErrorKind::MissingRequiredField, "exercises",
                      node.value() + " is a test without exercises");
  }
  for (auto& k : iri_list(g, node, v.testKnowledgeTopic, "topics")) t.topics.insert(k);
  return t;
}

std::vector<Triple> to_triples(const Test& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.Test);
  for (auto& x : e.exercises) {
    em.add(e.id, v.consistsOf, Term(x.id));
    for (auto& t : to_triples(x)) em.out.push_back(std::move(t));
  }
  for (auto& k : e.topics) em.add(e.id, v.testKnowledgeTopic, Term(k));
  return std::move(em.out);
}

template <>
TestResult typed_view<TestResult>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.TestResult);
  TestResult r{.id = node,
               .user = as_iri(required_one(g, node, v.resultOfUser, "user"), node, "user"),
               .test = as_iri(required_one(g, node, v.resultOfTest, "test"), node, "test")};
  r.score = as_unit(required_one(g, node, v.score, "score"), node, "score");
  r.timestamp = as_text(required_one(g, node, v.timestamp, "timestamp"), node, "timestamp");
  return r;
}

std::vector<Triple> to_triples(const TestResult& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.TestResult);
  em.add(e.id, v.resultOfUser, Term(e.user));
  em.add(e.id, v.resultOfTest, Term(e.test));
  em.add(e.id, v.score, Term::decimal(e.score));
  em.add(e.id, v.timestamp, Term::string(e.timestamp));
  em.add(e.user, v.solves, Term(e.test));
  return std::move(em.out);
}

template <>
UserProfile typed_view<UserProfile>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.UserProfile);
  auto users = g.subjects(v.hasProfile, Term(node));
  if (users.empty()) {
    throw EntityError(ErrorKind::MissingRequiredField, "user", node.value() + " has no owning user");
  }
  if (users.size() > 1) invalid("user", node, "profile owned by more than one user");
  UserProfile p{.id = node, .user = users.front()};

  if (auto d = optional_one(g, node, v.preferredDuration, "preferredDuration")) {
    p.preferred_duration_minutes = as_int(*d, node, "preferredDuration");
    if (p.preferred_duration_minutes <= 0) invalid("preferredDuration", node, "must be positive");
  }
  auto modes = text_set(g, node, v.accessMode, "accessModes");
  if (!modes.empty()) p.access_modes = std::move(modes);
  for (auto& goal : iri_list(g, node, v.hasLearningGoal, "goals")) p.goals.insert(goal);
  p.objectives = text_set(g, node, v.hasLearningObjective, "objectives");

  bool have_level = false;
  for (const Iri& part : g.subjects(v.storedIn, Term(node))) {
    if (g.has_type(part, v.AcademicParameter)) {
      if (auto level = optional_one(g, part, v.educationalLevel, "educationalLevel")) {
        if (have_level) invalid("educationalLevel", node, "more than one educational level");
        p.educational_level = as_level(*level, part, "educationalLevel");
        have_level = true;
      }
    }
    if (g.has_type(part, v.AcademicIndicator)) {
      Iri topic = as_iri(required_one(g, part, v.masteryOf, "mastery"), part, "mastery");
      double level = as_unit(required_one(g, part, v.masteryLevel, "mastery"), part, "mastery");
      if (!p.mastery.try_emplace(topic, level).second) invalid("mastery", node, "duplicate mastery topic");
    }
    if (g.has_type(part, v.LearningPreference)) {
      auto text = as_text(required_one(g, part, v.mediaType, "preferences"), part, "preferences");
      auto media = parse_media_type(text);
      if (!media) invalid("preferences", part, "unknown media type '" + text + "'");
      double w = as_unit(required_one(g, part, v.preferenceWeight, "preferences"), part, "preferences");
      if (!p.media_preferences.try_emplace(*media, w).second) {
        invalid("preferences", node, "duplicate preference for " + text);
      }
    }
    bool is_static = g.has_type(part, v.StaticIndicator);
    bool is_dynamic = g.has_type(part, v.DynamicIndicator);
    if (is_static || is_dynamic) {
      if (is_static && is_dynamic) invalid("psychological", part, "indicator both static and dynamic");
      Indicator ind;
      ind.id = as_text(required_one(g, part, v.indicatorId, "psychological"), part, "psychological");
      ind.kind = is_static ? IndicatorKind::Static : IndicatorKind::Dynamic;
      ind.value = as_real(required_one(g, part, v.indicatorValue, "psychological"), part, "psychological");
      if (auto at = optional_one(g, part, v.observedAt, "psychological")) {
        ind.observed_at = as_text(*at, part, "psychological");
      } else if (is_dynamic) {
        throw EntityError(ErrorKind::MissingRequiredField, "observedAt",
                          part.value() + " is a dynamic indicator without a timestamp");
      }
      p.indicators.push_back(std::move(ind));
    }
    if (g.has_type(part, v.PsychologicalConstruct)) {
      auto id = as_text(required_one(g, part, v.constructId, "constructs"), part, "constructs");
      double value = as_unit(required_one(g, part, v.constructValue, "constructs"), part, "constructs");
      if (!p.constructs.try_emplace(id, value).second) invalid("constructs", node, "duplicate construct " + id);
    }
  }
  if (!have_level) {
    throw EntityError(ErrorKind::MissingRequiredField, "educationalLevel",
                      node.value() + " lacks an academic parameter with an educational level");
  }
  std::sort(p.indicators.begin(), p.indicators.end());
  for (std::size_t i = 1; i < p.indicators.size(); ++i) {
    const auto& a = p.indicators[i - 1];
    const auto& b = p.indicators[i];
    if (a.id == b.id && (a.kind == IndicatorKind::Static || b.kind == IndicatorKind::Static)) {
      invalid("psychological", node, "static indicator " + a.id + " appears more than once");
    }
  }
  return p;
}

std::vector<Triple> to_triples(const UserProfile& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.user, v.User);
  em.add(e.user, v.hasProfile, Term(e.id));
  em.type(e.id, v.UserProfile);
  em.add(e.id, v.preferredDuration, Term::integer(e.preferred_duration_minutes));
  for (auto& m : e.access_modes) em.add(e.id, v.accessMode, Term::string(m));
  for (auto& goal : e.goals) em.add(e.id, v.hasLearningGoal, Term(goal));
  for (auto& o : e.objectives) em.add(e.id, v.hasLearningObjective, Term::string(o));

  Iri academic = child(e.id, "academic");
  em.type(academic, v.AcademicParameter);
  em.add(academic, v.storedIn, Term(e.id));
  em.add(academic, v.educationalLevel, Term::integer(e.educational_level));

  std::size_t i = 0;
  for (auto& [topic, level] : e.mastery) {
    Iri node = child(e.id, "mastery-" + std::to_string(++i));
    em.type(node, v.AcademicIndicator);
    em.add(node, v.storedIn, Term(e.id));
    em.add(node, v.masteryOf, Term(topic));
    em.add(node, v.masteryLevel, Term::decimal(level));
  }
  for (auto& [media, weight] : e.media_preferences) {
    Iri node = child(e.id, "pref-" + std::string(to_string(media)));
    em.type(node, v.LearningPreference);
    em.add(node, v.storedIn, Term(e.id));
    em.add(node, v.mediaType, Term::string(std::string(to_string(media))));
    em.add(node, v.preferenceWeight, Term::decimal(weight));
  }
  i = 0;
  for (auto& ind : e.indicators) {
    Iri node = child(e.id, "indicator-" + std::to_string(++i));
    em.type(node, ind.kind == IndicatorKind::Static ? v.StaticIndicator : v.DynamicIndicator);
    em.add(node, v.storedIn, Term(e.id));
    em.add(node, v.indicatorId, Term::string(ind.id));
    em.add(node, v.indicatorValue, Term::decimal(ind.value));
    if (!ind.observed_at.empty()) em.add(node, v.observedAt, Term::string(ind.observed_at));
  }
  i = 0;
  for (auto& [id, value] : e.constructs) {
    Iri node = child(e.id, "construct-" + std::to_string(++i));
    em.type(node, v.PsychologicalConstruct);
    em.add(node, v.storedIn, Term(e.id));
    em.add(node, v.constructId, Term::string(id));
    em.add(node, v.constructValue, Term::decimal(value));
  }
  return std::move(em.out);
}

namespace {

Recommendation read_recommendation(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.Recommendation);
  Recommendation r{
      .resource = as_iri(required_one(g, node, v.recommendsResource, "resource"), node, "resource")};
  r.score = as_unit(required_one(g, node, v.recommendationScore, "score"), node, "score");
  for (auto& t : g.objects(node, v.rationale)) {
    auto text = as_text(t, node, "rationale");
    auto eq = text.find('=');
    if (eq == std::string::npos) invalid("rationale", node, "expected criterion=contribution");
    auto value = Term::literal(text.substr(eq + 1), xsd::kDouble).as_number();
    if (!value) invalid("rationale", node, "bad contribution");
    r.rationale.emplace_back(text.substr(0, eq), *value);
  }
  std::sort(r.rationale.begin(), r.rationale.end());
  r.excluded = r.rationale.size() == 1 && r.rationale.front().first == "accessibility";
  return r;
}

}  // namespace

template <>
LearningPath typed_view<LearningPath>(const Graph& g, const Iri& node) {
  const auto& v = vocab();
  require_type(g, node, v.LearningPath);
  LearningPath path{.id = node,
                    .goal = as_iri(required_one(g, node, v.hasLearningGoal, "goal"), node, "goal")};
  path.weight = as_real(required_one(g, node, v.pathWeight, "weight"), node, "weight");
  if (path.weight < 0) invalid("weight", node, "negative weight");

  struct Step {
    std::int64_t position;
    Iri topic;
    std::vector<std::pair<std::int64_t, Recommendation>> recs;
  };
  std::vector<Step> steps;
  for (auto& s : iri_list(g, node, v.hasStep, "topics")) {
    require_type(g, s, v.PathStep);
    Step step{as_int(required_one(g, s, v.position, "topics"), s, "position"),
              as_iri(required_one(g, s, v.stepTopic, "topics"), s, "topics"),
              {}};
    for (auto& rnode : iri_list(g, s, v.hasRecommendation, "recommendations")) {
      auto rank = as_int(required_one(g, rnode, v.rank, "recommendations"), rnode, "rank");
      step.recs.emplace_back(rank, read_recommendation(g, rnode));
    }
    steps.push_back(std::move(step));
  }
  if (steps.empty()) {
    throw EntityError(ErrorKind::MissingRequiredField, "topics", node.value() + " is an empty learning path");
  }
  std::sort(steps.begin(), steps.end(), [](auto& a, auto& b) { return a.position < b.position; });
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].position != static_cast<std::int64_t>(i + 1)) {
      invalid("topics", node, "step positions must be 1..n without gaps");
    }
    path.topics.push_back(steps[i].topic);
    if (!steps[i].recs.empty()) {
      auto& recs = steps[i].recs;
      std::sort(recs.begin(), recs.end(), [](auto& a, auto& b) { return a.first < b.first; });
      auto& out = path.recommendations.try_emplace(steps[i].topic).first->second;
      for (auto& [rank, rec] : recs) out.push_back(std::move(rec));
    }
  }
  return path;
}

std::vector<Triple> to_triples(const LearningPath& e) {
  const auto& v = vocab();
  Emitter em;
  em.type(e.id, v.LearningPath);
  em.add(e.id, v.hasLearningGoal, Term(e.goal));
  em.add(e.id, v.pathWeight, Term::decimal(e.weight));
  for (std::size_t i = 0; i < e.topics.size(); ++i) {
    const Iri& topic = e.topics[i];
    Iri step = child(e.id, "step-" + std::to_string(i + 1));
    em.add(e.id, v.consistsOfKnowledge, Term(topic));
    em.add(e.id, v.hasStep, Term(step));
    em.type(step, v.PathStep);
    em.add(step, v.position, Term::integer(static_cast<std::int64_t>(i + 1)));
    em.add(step, v.stepTopic, Term(topic));
    auto it = e.recommendations.find(topic);
    if (it == e.recommendations.end()) continue;
    for (std::size_t j = 0; j < it->second.size(); ++j) {
      const Recommendation& rec = it->second[j];
      Iri rnode = child(step, "rec-" + std::to_string(j + 1));
      em.add(step, v.hasRecommendation, Term(rnode));
      em.type(rnode, v.Recommendation);
      em.add(rnode, v.rank, Term::integer(static_cast<std::int64_t>(j + 1)));
      em.add(rnode, v.recommendsResource, Term(rec.resource));
      em.add(rnode, v.recommendationScore, Term::decimal(rec.score));
      for (auto& [criterion, contribution] : rec.rationale) {
        em.add(rnode, v.rationale, Term::string(criterion + "=" + format_double(contribution)));
      }
    }
  }
  return std::move(em.out);
}

}  // namespace educor
