#include "educor/catalog.hpp"

#include "educor/error.hpp"
#include "educor/vocabulary.hpp"

namespace educor {

namespace {

template <class Entity>
void load_all(const Graph& g, const Iri& cls, std::map<Iri, Entity>& out, std::vector<std::string>& issues) {
  for (const Iri& node : g.subjects(vocab().rdf_type, Term(cls))) {
    try {
      out.emplace(node, typed_view<Entity>(g, node));
    } catch (const Error& e) {
      issues.push_back(e.what());
    }
  }
}

template <class Map>
auto find_ptr(const Map& map, const Iri& id) -> const typename Map::mapped_type* {
  auto it = map.find(id);
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

const KnowledgeTopic* Catalog::topic(const Iri& id) const { return find_ptr(topics, id); }
const EducationalResource* Catalog::resource(const Iri& id) const { return find_ptr(resources, id); }
const Skill* Catalog::skill(const Iri& id) const { return find_ptr(skills, id); }

const UserProfile* Catalog::profile_for_user(const Iri& user) const {
  auto it = profile_of_user.find(user);
  return it == profile_of_user.end() ? nullptr : find_ptr(profiles, it->second);
}

std::vector<const EducationalResource*> Catalog::resources_of(const Iri& topic) const {
  std::vector<const EducationalResource*> out;
  auto it = resources_by_topic.find(topic);
  if (it == resources_by_topic.end()) return out;
  for (const Iri& id : it->second) out.push_back(&resources.at(id));
  return out;
}

Catalog load_catalog(const Graph& g) {
  const auto& v = vocab();
  Catalog c;
  load_all(g, v.KnowledgeTopic, c.topics, c.issues);
  load_all(g, v.EducationalResource, c.resources, c.issues);
  load_all(g, v.Skill, c.skills, c.issues);
  load_all(g, v.Test, c.tests, c.issues);
  load_all(g, v.TestResult, c.results, c.issues);
  load_all(g, v.UserProfile, c.profiles, c.issues);
  load_all(g, v.LearningPath, c.paths, c.issues);
  for (auto& [id, p] : c.profiles) c.profile_of_user.emplace(p.user, id);
  for (auto& [id, r] : c.resources) c.resources_by_topic[r.topic].push_back(id);
  return c;
}

}  // namespace educor
