#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace educor {

struct MappingEntry {
  std::string gold_class;
  std::optional<std::string> educor_class;  // nullopt: not covered
  bool operator==(const MappingEntry&) const = default;
};

/// Class-level mapping of one external repository schema onto the ontology.
struct SchemaMapping {
  std::string schema_name;
  std::vector<MappingEntry> entries;
};

/// Format: one `goldClass<TAB>ontologyClass` line per gold class, `-` for an
/// uncovered class. Blank lines and `#` comments are skipped; a
/// `# schema: Name` comment sets the schema name (default `fallback_name`).
/// Throws ParseError for malformed lines or unknown ontology classes,
/// Error(DuplicateGoldClass), and Error(EmptySchema) when there is no entry.
SchemaMapping parse_mapping(std::string_view text, const std::string& fallback_name);

/// parse_mapping of the file, named after the file stem by default.
SchemaMapping load_mapping(const std::filesystem::path& file);

/// Every `*.tsv` mapping in `dir`, in file-name order.
std::vector<SchemaMapping> load_mappings(const std::filesystem::path& dir);

struct RecallReport {
  std::string schema_name;
  std::size_t tp = 0;
  std::size_t fn = 0;
  double recall = 0.0;
};

/// recall = TP / (TP + FN). Throws Error(EmptySchema) when TP + FN = 0.
RecallReport compute_recall(const SchemaMapping& mapping);

/// Three decimals, e.g. "0.833".
std::string format_recall(double recall);

/// Columns Schema, Recall, TP, FN.
std::string recall_table(const std::vector<RecallReport>& reports);
std::string recall_tsv(const std::vector<RecallReport>& reports);

}  // namespace educor
