// educor: command-line front end over a single-file Turtle workspace.
//
// Exit codes: 0 success, 1 user or data error, 2 success with warnings.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "educor/catalog.hpp"
#include "educor/config.hpp"
#include "educor/error.hpp"
#include "educor/eval.hpp"
#include "educor/path_engine.hpp"
#include "educor/query.hpp"
#include "educor/recommender.hpp"
#include "educor/turtle.hpp"
#include "educor/validator.hpp"
#include "educor/vocabulary.hpp"

namespace fs = std::filesystem;
using namespace educor;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kWarnings = 2;

// Reported with the file name prefixed; carries ParseError positions through.
struct FileError {
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError{"cannot read " + path.string()};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TurtleDocument parse_file(const fs::path& path) {
  std::string text = read_file(path);
  try {
    return parse_turtle(text);
  } catch (const ParseError& e) {
    throw FileError{path.string() + ":" + e.diagnostic().to_string()};
  }
}

struct Workspace {
  Graph graph;
  PrefixMap prefixes;
  Catalog catalog;
};

Workspace open_workspace(const fs::path& path) {
  if (!fs::exists(path)) throw FileError{"workspace " + path.string() + " does not exist; run ingest first"};
  TurtleDocument doc = parse_file(path);
  PrefixMap prefixes = default_prefixes();
  for (auto& [k, v] : doc.prefixes) prefixes[k] = v;
  doc.graph.seal();
  Catalog catalog = load_catalog(doc.graph);
  return {std::move(doc.graph), std::move(prefixes), std::move(catalog)};
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string name_of(const Iri& iri, const PrefixMap& prefixes) {
  return compact_iri(iri.value(), prefixes).value_or("<" + iri.value() + ">");
}

struct Options {
  std::string workspace;
  std::string config;
  std::string format;
};

struct Settings {
  CliConfig config;
  std::optional<OutputFormat> format;  // unset: command default

  OutputFormat format_or(OutputFormat fallback) const { return format.value_or(fallback); }
};

Settings resolve(const Options& opt) {
  Settings s;
  if (!opt.config.empty()) s.config = load_config(opt.config);
  if (!opt.workspace.empty()) s.config.workspace = opt.workspace;
  s.format = s.config.format;
  if (!opt.format.empty()) {
    s.format = parse_format(opt.format);
    if (!s.format) throw Error(ErrorKind::Config, "--format must be table, tsv or turtle");
  }
  return s;
}

void reject_turtle(const Settings& s, const char* command) {
  if (s.format == OutputFormat::Turtle) {
    throw Error(ErrorKind::Config, std::string("turtle output is not available for ") + command);
  }
}

// ---------------------------------------------------------------- commands

int cmd_ingest(const Settings& s, const std::vector<std::string>& files, bool fresh) {
  Graph graph;
  PrefixMap prefixes = default_prefixes();
  const fs::path& ws = s.config.workspace;
  if (!fresh && fs::exists(ws)) {
    TurtleDocument doc = parse_file(ws);
    graph = std::move(doc.graph);
    for (auto& [k, v] : doc.prefixes) prefixes[k] = v;
  }
  for (const auto& f : files) {
    TurtleDocument doc = parse_file(f);
    graph.insert_all(doc.graph);
    for (auto& [k, v] : doc.prefixes) prefixes.try_emplace(k, v);
  }
  graph.seal();
  if (ws.has_parent_path()) fs::create_directories(ws.parent_path());
  std::ofstream out(ws, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError{"cannot write workspace " + ws.string()};
  out << serialize_turtle(graph, prefixes);
  out.close();
  if (!out) throw FileError{"cannot write workspace " + ws.string()};
  std::cout << graph.size() << " triples in " << ws.string() << "\n";
  return kOk;
}

int cmd_validate(const Settings& s) {
  reject_turtle(s, "validate");
  Workspace w = open_workspace(s.config.workspace);
  auto diagnostics = validate_graph(w.graph);
  std::size_t errors = 0;
  for (const auto& d : diagnostics) errors += d.severity == Severity::Error;
  std::cout << format_report(diagnostics);
  if (s.format_or(OutputFormat::Table) == OutputFormat::Table) {
    std::cout << errors << " errors, " << diagnostics.size() - errors << " warnings\n";
  }
  if (errors) return kFailed;
  return diagnostics.empty() ? kOk : kWarnings;
}

void print_paths(const std::vector<LearningPath>& paths, const Workspace& w, OutputFormat format) {
  if (format == OutputFormat::Turtle) {
    Graph g;
    for (const auto& p : paths) add_entity(g, p);
    std::cout << serialize_turtle(g, w.prefixes);
    return;
  }
  if (format == OutputFormat::Tsv) {
    std::cout << "rank\tpath\tweight\tposition\ttopic\tresource\tscore\n";
  }
  for (std::size_t r = 0; r < paths.size(); ++r) {
    const LearningPath& p = paths[r];
    if (format == OutputFormat::Table) {
      std::cout << "path " << r + 1 << "  " << name_of(p.id, w.prefixes) << "  weight " << fixed(p.weight) << "\n";
    }
    for (std::size_t i = 0; i < p.topics.size(); ++i) {
      const Iri& topic = p.topics[i];
      std::string resource = "-";
      std::string score = "-";
      if (auto it = p.recommendations.find(topic); it != p.recommendations.end() && !it->second.empty()) {
        resource = name_of(it->second.front().resource, w.prefixes);
        score = fixed(it->second.front().score);
      }
      if (format == OutputFormat::Tsv) {
        std::cout << r + 1 << "\t" << p.id.value() << "\t" << fixed(p.weight) << "\t" << i + 1 << "\t"
                  << topic.value() << "\t" << resource << "\t" << score << "\n";
      } else {
        std::cout << "  " << i + 1 << ". " << name_of(topic, w.prefixes) << "  ->  " << resource;
        if (score != "-") std::cout << " (" << score << ")";
        std::cout << "\n";
      }
    }
  }
}

const UserProfile& profile_or_fail(const Workspace& w, const Iri& user) {
  const UserProfile* p = w.catalog.profile_for_user(user);
  if (!p) throw Error(ErrorKind::UnknownResource, "user " + user.value() + " has no readable profile");
  return *p;
}

int cmd_path(const Settings& s, const std::string& goal_text, const std::string& user_text,
             std::optional<std::size_t> k, bool stored) {
  Workspace w = open_workspace(s.config.workspace);
  Iri goal = expand_name(goal_text, w.prefixes);
  Iri user = expand_name(user_text, w.prefixes);
  const UserProfile& profile = profile_or_fail(w, user);
  RecommendationRequirements req = s.config.requirements;
  if (k) req.max_paths = *k;
  req.validate();

  OutputFormat format = s.format_or(OutputFormat::Table);
  if (stored) {
    std::vector<LearningPath> candidates;
    for (const auto& [_, p] : w.catalog.paths) {
      if (p.goal == goal) candidates.push_back(p);
    }
    if (candidates.empty()) throw Error(ErrorKind::UnknownGoal, "no stored paths for goal " + goal.value());
    auto ranked = rank_paths(std::move(candidates), profile, req, w.catalog, s.config.scoring);
    for (auto& p : ranked) {
      for (const Iri& t : p.topics) {
        if (!p.recommendations.contains(t) && w.catalog.topic(t)) {
          p.recommendations[t] = recommend(t, profile, 1, w.catalog, s.config.scoring);
        }
      }
    }
    print_paths(ranked, w, format);
    return kOk;
  }
  PathPlan plan = plan_paths(goal, profile, req, w.catalog, s.config.scoring);
  if (plan.relaxed) {
    std::cerr << "warning: no prerequisite order satisfies the level axiom for " << goal.value()
              << "; showing orders without it\n";
  }
  print_paths(plan.paths, w, format);
  return plan.relaxed ? kWarnings : kOk;
}

int cmd_recommend(const Settings& s, const std::string& topic_text, const std::string& user_text, std::size_t n) {
  reject_turtle(s, "recommend");
  Workspace w = open_workspace(s.config.workspace);
  Iri topic = expand_name(topic_text, w.prefixes);
  Iri user = expand_name(user_text, w.prefixes);
  const UserProfile& profile = profile_or_fail(w, user);
  auto recs = recommend(topic, profile, n, w.catalog, s.config.scoring);
  bool tsv = s.format_or(OutputFormat::Table) == OutputFormat::Tsv;
  if (tsv) std::cout << "rank\tresource\tscore\tdifficulty\tduration\tmedia\tquality\n";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (tsv) {
      std::cout << i + 1 << "\t" << r.resource.value() << "\t" << fixed(r.score);
      for (const auto& [_, c] : r.rationale) std::cout << "\t" << fixed(c);
      std::cout << "\n";
    } else {
      std::cout << i + 1 << ". " << name_of(r.resource, w.prefixes) << "  " << fixed(r.score) << "  (";
      for (std::size_t j = 0; j < r.rationale.size(); ++j) {
        std::cout << (j ? ", " : "") << r.rationale[j].first << " " << fixed(r.rationale[j].second);
      }
      std::cout << ")\n";
    }
  }
  if (recs.empty() && !tsv) std::cout << "no accessible resources\n";
  return kOk;
}

int cmd_query(const Settings& s, const std::string& file) {
  reject_turtle(s, "query");
  std::string text = read_file(file);
  QueryAst q;
  try {
    q = parse_query(text);
  } catch (const ParseError& e) {
    throw FileError{file + ":" + e.diagnostic().to_string()};
  }
  Workspace w = open_workspace(s.config.workspace);
  BindingTable table = execute(q, w.graph);
  if (s.format_or(OutputFormat::Tsv) == OutputFormat::Tsv) {
    std::cout << to_tsv(table);
  } else {
    PrefixMap prefixes = w.prefixes;
    for (auto& [k, v] : q.prefixes) prefixes[k] = v;
    std::cout << to_text_table(table, prefixes);
  }
  return kOk;
}

int cmd_eval(const Settings& s, const std::string& dir_flag) {
  reject_turtle(s, "eval");
  fs::path dir = dir_flag.empty() ? s.config.mappings : fs::path(dir_flag);
  if (dir.empty()) throw Error(ErrorKind::Config, "eval needs --mappings DIR or a mappings config key");
  std::vector<RecallReport> reports;
  for (const auto& m : load_mappings(dir)) reports.push_back(compute_recall(m));
  if (reports.empty()) throw Error(ErrorKind::EmptySchema, "no *.tsv mappings in " + dir.string());
  std::cout << (s.format_or(OutputFormat::Table) == OutputFormat::Tsv ? recall_tsv(reports) : recall_table(reports));
  return kOk;
}

int cmd_stats(const Settings& s) {
  reject_turtle(s, "stats");
  Workspace w = open_workspace(s.config.workspace);
  const Vocabulary& v = vocab();
  std::vector<std::pair<std::string, std::size_t>> rows = {
      {"triples", w.graph.size()},
      {"knowledge_topics", w.catalog.topics.size()},
      {"educational_resources", w.catalog.resources.size()},
      {"skills", w.catalog.skills.size()},
      {"tests", w.catalog.tests.size()},
      {"test_results", w.catalog.results.size()},
      {"users", w.graph.subjects(v.rdf_type, Term(v.User)).size()},
      {"user_profiles", w.catalog.profiles.size()},
      {"learning_paths", w.catalog.paths.size()},
      {"unreadable_entities", w.catalog.issues.size()},
  };
  bool tsv = s.format_or(OutputFormat::Table) == OutputFormat::Tsv;
  if (tsv) std::cout << "statistic\tcount\n";
  for (const auto& [name, n] : rows) {
    if (tsv) {
      std::cout << name << "\t" << n << "\n";
    } else {
      std::string label = name;
      label.resize(24, ' ');
      std::cout << label << n << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Educational and career ontology tool: ingest, validate, plan paths, recommend, query."};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--workspace", opt.workspace, "Workspace Turtle file");
  app.add_option("--config", opt.config, "key = value configuration file");
  app.add_option("--format", opt.format, "Output format: table|tsv|turtle");

  std::vector<std::string> ingest_files;
  bool fresh = false;
  auto* ingest = app.add_subcommand("ingest", "Merge Turtle files into the workspace");
  ingest->add_option("files", ingest_files, "Turtle files")->required();
  ingest->add_flag("--fresh", fresh, "Start from an empty workspace");

  auto* validate = app.add_subcommand("validate", "Check the workspace against the ontology constraints");

  std::string goal, user, topic;
  std::optional<std::size_t> k;
  bool stored = false;
  auto* path = app.add_subcommand("path", "Enumerate ranked learning paths for a goal");
  path->add_option("--goal", goal, "Skill or knowledge topic IRI")->required();
  path->add_option("--user", user, "User IRI")->required();
  path->add_option("--k", k, "Number of paths")->check(CLI::PositiveNumber);
  path->add_flag("--stored", stored, "Rank stored candidate paths instead of enumerating");

  std::size_t n = 5;
  auto* rec = app.add_subcommand("recommend", "Rank resources of a topic for a user");
  rec->add_option("--topic", topic, "Knowledge topic IRI")->required();
  rec->add_option("--user", user, "User IRI")->required();
  rec->add_option("--n", n, "Number of resources")->check(CLI::PositiveNumber);

  std::string query_file;
  auto* query = app.add_subcommand("query", "Run a SPARQL SELECT query file");
  query->add_option("file", query_file, "Query file (.rq)")->required();

  std::string mappings;
  auto* eval = app.add_subcommand("eval", "Recall of ontology coverage against gold schema mappings");
  eval->add_option("--mappings", mappings, "Directory of *.tsv mappings");

  auto* stats = app.add_subcommand("stats", "Counts of workspace entities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFailed;
  }

  try {
    Settings s = resolve(opt);
    if (*ingest) return cmd_ingest(s, ingest_files, fresh);
    if (*validate) return cmd_validate(s);
    if (*path) return cmd_path(s, goal, user, k, stored);
    if (*rec) return cmd_recommend(s, topic, user, n);
    if (*query) return cmd_query(s, query_file);
    if (*eval) return cmd_eval(s, mappings);
    if (*stats) return cmd_stats(s);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.message << "\n";
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.diagnostic().to_string() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kFailed;
}
