#pragma once

#include <map>
#include <string>
#include <vector>

#include "educor/entities.hpp"

namespace educor {

/// Typed views of every entity in a sealed graph, keyed by IRI.
///
/// Loading is lenient: a node whose typed view fails is skipped and the
/// failure recorded in `issues` (the validator reports it precisely).
struct Catalog {
  std::map<Iri, KnowledgeTopic> topics;
  std::map<Iri, EducationalResource> resources;
  std::map<Iri, Skill> skills;
  std::map<Iri, Test> tests;
  std::map<Iri, TestResult> results;
  std::map<Iri, UserProfile> profiles;  // keyed by profile IRI
  std::map<Iri, LearningPath> paths;
  std::map<Iri, Iri> profile_of_user;
  std::map<Iri, std::vector<Iri>> resources_by_topic;  // via the resource's topic link
  std::vector<std::string> issues;

  const KnowledgeTopic* topic(const Iri& id) const;
  const EducationalResource* resource(const Iri& id) const;
  const Skill* skill(const Iri& id) const;
  const UserProfile* profile_for_user(const Iri& user) const;
  std::vector<const EducationalResource*> resources_of(const Iri& topic) const;
};

Catalog load_catalog(const Graph& graph);

}  // namespace educor
