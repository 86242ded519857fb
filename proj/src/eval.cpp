#include "educor/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "educor/diagnostic.hpp"
#include "educor/error.hpp"
#include "educor/vocabulary.hpp"

namespace educor {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_line(std::size_t line, std::size_t column, const std::string& message, std::string token) {
  throw ParseError(ErrorKind::Parse, ParseDiagnostic{line, column, message, std::move(token)});
}

}  // namespace

SchemaMapping parse_mapping(std::string_view text, const std::string& fallback_name) {
  const auto& names = ontology_class_names();
  std::set<std::string_view> known(names.begin(), names.end());

  SchemaMapping m{fallback_name, {}};
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string content = trim(line);
    if (content.empty()) continue;
    if (content.front() == '#') {
      std::string body = trim(std::string_view(content).substr(1));
      if (body.starts_with("schema:")) {
        std::string name = trim(std::string_view(body).substr(7));
        if (name.empty()) bad_line(line_no, 1, "empty schema name", content);
        m.schema_name = name;
      }
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      bad_line(line_no, 1, "expected '<gold class><TAB><class or ->'", std::string(line));
    }
    std::string gold = trim(line.substr(0, tab));
    std::string target = trim(line.substr(tab + 1));
    if (gold.empty()) bad_line(line_no, 1, "empty gold class", std::string(line));
    if (target.empty() || target.find('\t') != std::string::npos) {
      bad_line(line_no, tab + 2, "expected one ontology class or '-'", target);
    }
    if (!seen.insert(gold).second) {
      throw Error(ErrorKind::DuplicateGoldClass,
                  "gold class '" + gold + "' listed twice (line " + std::to_string(line_no) + ")");
    }
    if (target == "-") {
      m.entries.push_back({gold, std::nullopt});
    } else {
      if (!known.contains(target)) bad_line(line_no, tab + 2, "unknown ontology class '" + target + "'", target);
      m.entries.push_back({gold, target});
    }
  }
  if (m.entries.empty()) throw Error(ErrorKind::EmptySchema, "mapping '" + m.schema_name + "' has no entries");
  return m;
}

SchemaMapping load_mapping(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mapping(buf.str(), file.stem().string());
}

std::vector<SchemaMapping> load_mappings(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorKind::Io, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SchemaMapping> out;
  for (const auto& f : files) out.push_back(load_mapping(f));
  return out;
}

RecallReport compute_recall(const SchemaMapping& mapping) {
  RecallReport r{mapping.schema_name};
  for (const auto& e : mapping.entries) (e.educor_class ? r.tp : r.fn)++;
  if (r.tp + r.fn == 0) throw Error(ErrorKind::EmptySchema, "mapping '" + mapping.schema_name + "' has no entries");
  r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  return r;
}

std::string format_recall(double recall) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", recall);
  return buf;
}

std::string recall_table(const std::vector<RecallReport>& reports) {
  std::size_t width = 6;
  for (const auto& r : reports) width = std::max(width, r.schema_name.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string out = pad("Schema", width) + "  Recall  TP  FN\n";
  for (const auto& r : reports) {
    out += pad(r.schema_name, width) + "  " + pad(format_recall(r.recall), 6) + "  " +
           pad(std::to_string(r.tp), 2) + "  " + std::to_string(r.fn) + "\n";
  }
  return out;
}

std::string recall_tsv(const std::vector<RecallReport>& reports) {
  std::string out = "schema\trecall\ttp\tfn\n";
  for (const auto& r : reports) {
    out += r.schema_name + "\t" + format_recall(r.recall) + "\t" + std::to_string(r.tp) + "\t" +
           std::to_string(r.fn) + "\n";
  }
  return out;
}

}  // namespace educor
