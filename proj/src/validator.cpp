#include "educor/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "educor/error.hpp"
#include "educor/vocabulary.hpp"

namespace educor {

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

const std::vector<DiagnosticCode>& diagnostic_catalog() {
  static const std::vector<DiagnosticCode> codes = {
      {"E_DOMAIN", Severity::Error, "subject of a property is not an instance of the property's domain"},
      {"E_RANGE", Severity::Error, "object of a property has the wrong kind, type or value"},
      {"E_CARDINALITY", Severity::Error, "single-valued property has more than one value"},
      {"E_MISSING_FIELD", Severity::Error, "required property is absent"},
      {"E_TEST_EMPTY", Severity::Error, "test has no exercises"},
      {"E_PATH_EMPTY", Severity::Error, "learning path has no topics"},
      {"E_SKILL_NO_TOPIC", Severity::Error, "skill used as a learning goal requires no knowledge topic"},
      {"E_PREREQ_CYCLE", Severity::Error, "topic lies on a prerequisite cycle"},
      {"E_LEVEL_RANGE", Severity::Error, "difficulty or educational level outside 1..5"},
      {"E_SCORE_RANGE", Severity::Error, "score, weight, mastery or construct value outside [0,1]"},
      {"E_TIMESTAMP_DUP", Severity::Error, "two results of the same user and test share a timestamp"},
      {"E_INDICATOR_DUP", Severity::Error, "static indicator recorded more than once in a profile"},
      {"E_PATH_LEVEL", Severity::Error, "path starts with a harder topic than it ends with in one domain"},
      {"E_PATH_PREREQ", Severity::Error, "path places a topic before one of its prerequisites"},
      {"E_PATH_DUPLICATE", Severity::Error, "path lists a topic more than once"},
      {"W_PATH_NONMONOTONE", Severity::Warning, "same-domain levels along the path are not non-decreasing"},
      {"W_UNKNOWN_PROPERTY", Severity::Warning, "property in the ontology namespace is not part of the vocabulary"},
  };
  return codes;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_report(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += std::string(to_string(d.severity)) + "\t" + d.code + "\t" + d.subject.value() + "\t" + d.message + "\n";
  }
  return out;
}

namespace detail {

std::vector<Diagnostic> path_axioms(const LearningPath& path, const std::vector<const KnowledgeTopic*>& topics) {
  std::vector<Diagnostic> out;
  auto emit = [&](Severity s, const char* code, std::string msg) {
    out.push_back({s, code, path.id, std::move(msg)});
  };
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (!topics[i]) {
      throw Error(ErrorKind::UnresolvedTopic,
                  "path " + path.id.value() + " refers to unknown topic " + path.topics[i].value());
    }
  }

  std::map<Iri, std::size_t> first_pos;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (!first_pos.try_emplace(path.topics[i], i).second) {
      emit(Severity::Error, "E_PATH_DUPLICATE", "topic " + path.topics[i].value() + " appears more than once");
    }
  }

  for (std::size_t i = 0; i < topics.size(); ++i) {
    for (const Iri& pre : topics[i]->prerequisites) {
      auto it = first_pos.find(pre);
      if (it != first_pos.end() && it->second > i) {
        emit(Severity::Error, "E_PATH_PREREQ",
             "topic " + path.topics[i].value() + " precedes its prerequisite " + pre.value());
      }
    }
  }

  std::map<std::string, std::vector<int>> levels_by_domain;
  for (const KnowledgeTopic* t : topics) levels_by_domain[t->domain].push_back(t->difficulty);
  for (const auto& [domain, levels] : levels_by_domain) {
    if (levels.front() > levels.back()) {
      emit(Severity::Error, "E_PATH_LEVEL",
           "domain '" + domain + "' starts at level " + std::to_string(levels.front()) + " and ends at level " +
               std::to_string(levels.back()));
    } else if (!std::is_sorted(levels.begin(), levels.end())) {
      emit(Severity::Warning, "W_PATH_NONMONOTONE", "levels in domain '" + domain + "' decrease along the path");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

std::vector<Diagnostic> check_path_axioms(const LearningPath& path, const Graph& graph) {
  std::map<Iri, std::optional<KnowledgeTopic>> cache;
  return check_path_axioms_with(path, [&](const Iri& id) -> const KnowledgeTopic* {
    auto [it, fresh] = cache.try_emplace(id);
    if (fresh) {
      try {
        it->second = typed_view<KnowledgeTopic>(graph, id);
      } catch (const Error&) {
      }
    }
    return it->second ? &*it->second : nullptr;
  });
}

namespace {

enum class RangeKind { Classes, AnyIri, Text, Integer, Number };

enum class ValueRule { None, Level, Unit, NonNegative, Positive, MediaType };

struct PropertyRule {
  const Iri* property;
  std::vector<const Iri*> domain;  // empty: any subject
  RangeKind range;
  std::vector<const Iri*> range_classes;
  bool functional;
  ValueRule value_rule = ValueRule::None;
};

std::vector<PropertyRule> make_rules() {
  const Vocabulary& v = vocab();
  using R = RangeKind;
  using V = ValueRule;
  std::vector<const Iri*> profile_parts = {&v.AcademicParameter, &v.AcademicIndicator, &v.LearningPreference,
                                           &v.StaticIndicator, &v.DynamicIndicator, &v.PsychologicalConstruct};
  std::vector<const Iri*> indicators = {&v.StaticIndicator, &v.DynamicIndicator};
  return {
      {&v.rdfs_label, {}, R::Text, {}, false},
      {&v.domain, {&v.KnowledgeTopic}, R::Text, {}, true},
      {&v.difficulty, {&v.KnowledgeTopic, &v.EducationalResource}, R::Integer, {}, true, V::Level},
      {&v.hasPrerequisite, {&v.KnowledgeTopic}, R::Classes, {&v.KnowledgeTopic}, false},
      {&v.hasEducationalResource, {&v.KnowledgeTopic}, R::Classes, {&v.EducationalResource}, false},
      {&v.refersToTopic, {&v.EducationalResource, &v.Exercise}, R::Classes, {&v.KnowledgeTopic}, true},
      {&v.mediaType, {&v.EducationalResource, &v.LearningPreference}, R::Text, {}, true, V::MediaType},
      {&v.durationMinutes, {&v.EducationalResource}, R::Integer, {}, true, V::NonNegative},
      {&v.qualityScore, {&v.EducationalResource}, R::Number, {}, true, V::Unit},
      {&v.ratingCount, {&v.EducationalResource}, R::Integer, {}, true, V::NonNegative},
      {&v.accessMode, {&v.EducationalResource, &v.UserProfile}, R::Text, {}, false},
      {&v.sourceUrl, {&v.EducationalResource}, R::Text, {}, true},
      {&v.requiresKnowledgeTopic, {&v.Skill}, R::Classes, {&v.KnowledgeTopic}, false},
      {&v.linkedToJob, {&v.Skill}, R::AnyIri, {}, false},
      {&v.consistsOf, {&v.Test}, R::Classes, {&v.Exercise}, false},
      {&v.testKnowledgeTopic, {&v.Test}, R::Classes, {&v.KnowledgeTopic}, false},
      {&v.question, {&v.Exercise}, R::Text, {}, true},
      {&v.answer, {&v.Exercise}, R::Text, {}, true},
      {&v.resultOfUser, {&v.TestResult}, R::Classes, {&v.User}, true},
      {&v.resultOfTest, {&v.TestResult}, R::Classes, {&v.Test}, true},
      {&v.score, {&v.TestResult}, R::Number, {}, true, V::Unit},
      {&v.timestamp, {&v.TestResult}, R::Text, {}, true},
      {&v.solves, {&v.User}, R::Classes, {&v.Test}, false},
      {&v.hasProfile, {&v.User}, R::Classes, {&v.UserProfile}, true},
      {&v.storedIn, profile_parts, R::Classes, {&v.UserProfile}, true},
      {&v.educationalLevel, {&v.AcademicParameter}, R::Integer, {}, true, V::Level},
      {&v.masteryOf, {&v.AcademicIndicator}, R::Classes, {&v.KnowledgeTopic}, true},
      {&v.masteryLevel, {&v.AcademicIndicator}, R::Number, {}, true, V::Unit},
      {&v.preferenceWeight, {&v.LearningPreference}, R::Number, {}, true, V::Unit},
      {&v.preferredDuration, {&v.UserProfile}, R::Integer, {}, true, V::Positive},
      {&v.hasLearningGoal, {&v.UserProfile, &v.LearningPath}, R::Classes, {&v.Skill, &v.KnowledgeTopic}, false},
      {&v.hasLearningObjective, {&v.UserProfile, &v.LearningPath}, R::Text, {}, false},
      {&v.indicatorId, indicators, R::Text, {}, true},
      {&v.indicatorValue, indicators, R::Number, {}, true},
      {&v.observedAt, indicators, R::Text, {}, true},
      {&v.constructId, {&v.PsychologicalConstruct}, R::Text, {}, true},
      {&v.constructValue, {&v.PsychologicalConstruct}, R::Number, {}, true, V::Unit},
      {&v.pathWeight, {&v.LearningPath}, R::Number, {}, true, V::NonNegative},
      {&v.consistsOfKnowledge, {&v.LearningPath}, R::Classes, {&v.KnowledgeTopic}, false},
      {&v.hasStep, {&v.LearningPath}, R::Classes, {&v.PathStep}, false},
      {&v.position, {&v.PathStep}, R::Integer, {}, true, V::Positive},
      {&v.stepTopic, {&v.PathStep}, R::Classes, {&v.KnowledgeTopic}, true},
      {&v.hasRecommendation, {&v.PathStep}, R::Classes, {&v.Recommendation}, false},
      {&v.recommendsResource, {&v.Recommendation}, R::Classes, {&v.EducationalResource}, true},
      {&v.recommendationScore, {&v.Recommendation}, R::Number, {}, true, V::Unit},
      {&v.rank, {&v.Recommendation}, R::Integer, {}, true, V::Positive},
      {&v.rationale, {&v.Recommendation}, R::Text, {}, false},
  };
}

const std::vector<PropertyRule>& rules() {
  static const std::vector<PropertyRule> r = make_rules();
  return r;
}

std::string local_name(const Iri& iri) {
  const std::string& s = iri.value();
  auto pos = s.find_last_of("#/");
  return pos == std::string::npos ? s : s.substr(pos + 1);
}

class Checker {
 public:
  explicit Checker(const Graph& g) : g_(g), v_(vocab()) {}

  std::vector<Diagnostic> run() {
    check_properties();
    check_required_fields();
    check_learning_goals();
    check_prerequisite_cycles();
    check_result_timestamps();
    check_profiles();
    check_paths();
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void error(const char* code, const Iri& subject, std::string msg) {
    out_.push_back({Severity::Error, code, subject, std::move(msg)});
  }

  bool has_any_type(const Iri& node, const std::vector<const Iri*>& classes) const {
    return std::any_of(classes.begin(), classes.end(), [&](const Iri* c) { return g_.has_type(node, *c); });
  }

  static std::string class_list(const std::vector<const Iri*>& classes) {
    std::string s;
    for (const Iri* c : classes) s += (s.empty() ? "" : "|") + local_name(*c);
    return s;
  }

  void check_value(const PropertyRule& rule, const Triple& t) {
    const std::string name = local_name(*rule.property);
    switch (rule.value_rule) {
      case ValueRule::None:
        return;
      case ValueRule::Level: {
        auto v = t.object.as_integer();
        if (v && (*v < kMinLevel || *v > kMaxLevel)) {
          error("E_LEVEL_RANGE", t.subject, name + " " + t.object.value() + " outside 1..5");
        }
        return;
      }
      case ValueRule::Unit: {
        auto v = t.object.as_number();
        if (v && (*v < 0.0 || *v > 1.0)) {
          error("E_SCORE_RANGE", t.subject, name + " " + t.object.value() + " outside [0,1]");
        }
        return;
      }
      case ValueRule::NonNegative: {
        auto v = t.object.as_number();
        if (v && *v < 0) error("E_RANGE", t.subject, name + " " + t.object.value() + " is negative");
        return;
      }
      case ValueRule::Positive: {
        auto v = t.object.as_number();
        if (v && *v <= 0) error("E_RANGE", t.subject, name + " " + t.object.value() + " must be positive");
        return;
      }
      case ValueRule::MediaType:
        if (t.object.is_literal() && !parse_media_type(t.object.value())) {
          error("E_RANGE", t.subject, "unknown media type '" + t.object.value() + "'");
        }
        return;
    }
  }

  void check_properties() {
    std::map<Iri, const PropertyRule*> by_property;
    for (const auto& r : rules()) by_property.emplace(*r.property, &r);

    std::map<std::pair<Iri, Iri>, std::size_t> counts;
    for (const Triple& t : g_) {
      if (t.predicate == v_.rdf_type) continue;
      auto it = by_property.find(t.predicate);
      if (it == by_property.end()) {
        if (t.predicate.value().starts_with(kEducorNs)) {
          out_.push_back({Severity::Warning, "W_UNKNOWN_PROPERTY", t.subject,
                          "property " + local_name(t.predicate) + " is not in the vocabulary"});
        }
        continue;
      }
      const PropertyRule& rule = *it->second;
      const std::string name = local_name(t.predicate);
      if (!rule.domain.empty() && !has_any_type(t.subject, rule.domain)) {
        error("E_DOMAIN", t.subject, name + " requires a subject of type " + class_list(rule.domain));
      }
      switch (rule.range) {
        case RangeKind::Classes:
          if (!t.object.is_iri()) {
            error("E_RANGE", t.subject, name + " expects an IRI of type " + class_list(rule.range_classes));
          } else if (!has_any_type(Iri(t.object.value()), rule.range_classes)) {
            error("E_RANGE", t.subject,
                  name + " target " + t.object.value() + " is not a " + class_list(rule.range_classes));
          }
          break;
        case RangeKind::AnyIri:
          if (!t.object.is_iri()) error("E_RANGE", t.subject, name + " expects an IRI");
          break;
        case RangeKind::Text:
          if (!t.object.is_literal() || t.object.is_numeric()) {
            error("E_RANGE", t.subject, name + " expects a string literal");
          }
          break;
        case RangeKind::Integer:
          if (!t.object.as_integer()) error("E_RANGE", t.subject, name + " expects an integer literal");
          break;
        case RangeKind::Number:
          if (!t.object.as_number()) error("E_RANGE", t.subject, name + " expects a numeric literal");
          break;
      }
      check_value(rule, t);
      if (rule.functional) ++counts[{t.subject, t.predicate}];
    }
    for (const auto& [key, n] : counts) {
      if (n > 1) {
        error("E_CARDINALITY", key.first,
              local_name(key.second) + " has " + std::to_string(n) + " values, expected one");
      }
    }
  }

  void require(const Iri& cls, std::initializer_list<const Iri*> props) {
    for (const Iri& node : g_.subjects(v_.rdf_type, Term(cls))) {
      for (const Iri* p : props) {
        if (g_.objects(node, *p).empty()) {
          error("E_MISSING_FIELD", node, local_name(cls) + " lacks required field " + local_name(*p));
        }
      }
    }
  }

  void check_required_fields() {
    require(v_.KnowledgeTopic, {&v_.domain, &v_.difficulty});
    require(v_.EducationalResource, {&v_.refersToTopic, &v_.mediaType, &v_.durationMinutes, &v_.difficulty});
    require(v_.Exercise, {&v_.question, &v_.answer, &v_.refersToTopic});
    require(v_.TestResult, {&v_.resultOfUser, &v_.resultOfTest, &v_.score, &v_.timestamp});
    require(v_.AcademicParameter, {&v_.storedIn});
    require(v_.AcademicIndicator, {&v_.storedIn, &v_.masteryOf, &v_.masteryLevel});
    require(v_.LearningPreference, {&v_.storedIn, &v_.mediaType, &v_.preferenceWeight});
    require(v_.StaticIndicator, {&v_.storedIn, &v_.indicatorId, &v_.indicatorValue});
    require(v_.DynamicIndicator, {&v_.storedIn, &v_.indicatorId, &v_.indicatorValue, &v_.observedAt});
    require(v_.PsychologicalConstruct, {&v_.storedIn, &v_.constructId, &v_.constructValue});
    require(v_.LearningPath, {&v_.hasLearningGoal, &v_.pathWeight});
    require(v_.PathStep, {&v_.position, &v_.stepTopic});
    require(v_.Recommendation, {&v_.recommendsResource, &v_.recommendationScore, &v_.rank});

    for (const Iri& test : g_.subjects(v_.rdf_type, Term(v_.Test))) {
      if (g_.objects(test, v_.consistsOf).empty()) error("E_TEST_EMPTY", test, "test has no exercises");
    }
    for (const Iri& path : g_.subjects(v_.rdf_type, Term(v_.LearningPath))) {
      if (g_.objects(path, v_.hasStep).empty()) error("E_PATH_EMPTY", path, "learning path has no topics");
    }
  }

  void check_learning_goals() {
    std::set<Iri> goals;
    for (const Triple& t : g_.match({std::nullopt, v_.hasLearningGoal, std::nullopt})) {
      if (t.object.is_iri()) goals.insert(Iri(t.object.value()));
    }
    for (const Iri& goal : goals) {
      if (g_.has_type(goal, v_.Skill) && g_.objects(goal, v_.requiresKnowledgeTopic).empty()) {
        error("E_SKILL_NO_TOPIC", goal, "skill is a learning goal but requires no knowledge topic");
      }
    }
  }

  // Tarjan's SCC over hasPrerequisite; every node of a non-trivial component
  // (or with a self-loop) is reported.
  void check_prerequisite_cycles() {
    std::map<Iri, std::vector<Iri>> adj;
    for (const Triple& t : g_.match({std::nullopt, v_.hasPrerequisite, std::nullopt})) {
      if (t.object.is_iri()) adj[t.subject].push_back(Iri(t.object.value()));
    }
    std::map<Iri, int> index, low;
    std::set<Iri> on_stack;
    std::vector<Iri> stack;
    int counter = 0;

    std::function<void(const Iri&)> visit = [&](const Iri& n) {
      index[n] = low[n] = counter++;
      stack.push_back(n);
      on_stack.insert(n);
      if (auto it = adj.find(n); it != adj.end()) {
        for (const Iri& m : it->second) {
          if (!index.contains(m)) {
            visit(m);
            low[n] = std::min(low[n], low[m]);
          } else if (on_stack.contains(m)) {
            low[n] = std::min(low[n], index[m]);
          }
        }
      }
      if (low[n] == index[n]) {
        std::vector<Iri> component;
        for (;;) {
          Iri m = stack.back();
          stack.pop_back();
          on_stack.erase(m);
          component.push_back(m);
          if (m == n) break;
        }
        bool self_loop = false;
        if (auto it = adj.find(n); it != adj.end()) {
          self_loop = std::find(it->second.begin(), it->second.end(), n) != it->second.end();
        }
        if (component.size() > 1 || self_loop) {
          std::sort(component.begin(), component.end());
          std::string members;
          for (const Iri& m : component) members += (members.empty() ? "" : ", ") + m.value();
          for (const Iri& m : component) error("E_PREREQ_CYCLE", m, "prerequisite cycle through " + members);
        }
      }
    };
    for (const auto& [n, _] : adj) {
      if (!index.contains(n)) visit(n);
    }
  }

  void check_result_timestamps() {
    std::map<std::tuple<Term, Term, Term>, std::vector<Iri>> groups;
    for (const Iri& r : g_.subjects(v_.rdf_type, Term(v_.TestResult))) {
      for (const Term& user : g_.objects(r, v_.resultOfUser)) {
        for (const Term& test : g_.objects(r, v_.resultOfTest)) {
          for (const Term& ts : g_.objects(r, v_.timestamp)) groups[{user, test, ts}].push_back(r);
        }
      }
    }
    for (const auto& [key, results] : groups) {
      if (results.size() < 2) continue;
      for (const Iri& r : results) {
        error("E_TIMESTAMP_DUP", r,
              "timestamp " + std::get<2>(key).value() + " shared by " + std::to_string(results.size()) +
                  " results of the same user and test");
      }
    }
  }

  void check_profiles() {
    for (const Iri& profile : g_.subjects(v_.rdf_type, Term(v_.UserProfile))) {
      auto owners = g_.subjects(v_.hasProfile, Term(profile));
      if (owners.empty()) error("E_MISSING_FIELD", profile, "UserProfile has no owning user (hasProfile)");
      if (owners.size() > 1) error("E_CARDINALITY", profile, "profile is owned by more than one user");

      std::size_t levels = 0;
      std::map<std::string, std::pair<std::size_t, bool>> indicator_ids;  // id -> (count, any static)
      for (const Iri& part : g_.subjects(v_.storedIn, Term(profile))) {
        if (g_.has_type(part, v_.AcademicParameter)) levels += g_.objects(part, v_.educationalLevel).size();
        bool is_static = g_.has_type(part, v_.StaticIndicator);
        if (is_static || g_.has_type(part, v_.DynamicIndicator)) {
          for (const Term& id : g_.objects(part, v_.indicatorId)) {
            auto& entry = indicator_ids[id.value()];
            ++entry.first;
            entry.second = entry.second || is_static;
          }
        }
      }
      if (levels == 0) error("E_MISSING_FIELD", profile, "UserProfile lacks an educational level");
      if (levels > 1) error("E_CARDINALITY", profile, "profile has more than one educational level");
      for (const auto& [id, entry] : indicator_ids) {
        if (entry.second && entry.first > 1) {
          error("E_INDICATOR_DUP", profile, "static indicator '" + id + "' recorded " +
                                                std::to_string(entry.first) + " times");
        }
      }
    }
  }

  void check_paths() {
    for (const Iri& node : g_.subjects(v_.rdf_type, Term(v_.LearningPath))) {
      LearningPath path{.id = node, .goal = node};
      try {
        path = typed_view<LearningPath>(g_, node);
      } catch (const Error&) {
        continue;  // field-level problems are already reported
      }
      try {
        for (auto& d : check_path_axioms(path, g_)) out_.push_back(std::move(d));
      } catch (const Error&) {
        // unresolved step topics surface as E_RANGE on stepTopic
      }
    }
  }

  const Graph& g_;
  const Vocabulary& v_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_graph(const Graph& graph) { return Checker(graph).run(); }

}  // namespace educor
