#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "educor/path_engine.hpp"
#include "educor/recommender.hpp"

namespace educor {

enum class OutputFormat { Table, Tsv, Turtle };

std::optional<OutputFormat> parse_format(std::string_view text);

/// Settings read from a `key = value` file. Keys:
///
///   workspace = PATH            mappings = DIR
///   format = table|tsv|turtle
///   scoring.difficulty|media|quality|duration = W      (sum 1)
///   requirements.difficulty_fit|preference_fit|quality|path_length = W  (sum 1)
///   k = N                       alpha = A              neutral_fill = V
///   indicator.ID = static|dynamic MIN MAX
///   construct.ID = IND:WEIGHT:+|- [IND:WEIGHT:+|- ...]
///
/// `#` starts a comment. Unknown keys are rejected.
struct CliConfig {
  std::filesystem::path workspace = "educor.ttl";
  std::filesystem::path mappings;
  std::optional<OutputFormat> format;  // unset: each command's default
  ScoringWeights scoring;
  RecommendationRequirements requirements;
  double alpha = kDefaultAlpha;
  PsychModel psych;

  void validate() const;
};

/// Applies the settings in `text` on top of `base`. Relative paths are
/// resolved against `base_dir`. Throws Error(Config), naming the line for
/// per-line problems.
CliConfig parse_config(std::string_view text, CliConfig base = {}, const std::filesystem::path& base_dir = {});

CliConfig load_config(const std::filesystem::path& file, CliConfig base = {});

}  // namespace educor
