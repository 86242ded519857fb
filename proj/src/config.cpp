#include "educor/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "educor/error.hpp"

namespace educor {

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "tsv") return OutputFormat::Tsv;
  if (text == "turtle") return OutputFormat::Turtle;
  return std::nullopt;
}

void CliConfig::validate() const {
  scoring.validate();
  requirements.validate();
  psych.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::Config, "alpha must lie in [0,1]");
  if (!(psych.neutral >= 0.0 && psych.neutral <= 1.0)) {
    throw Error(ErrorKind::Config, "neutral_fill must lie in [0,1]");
  }
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class LineParser {
 public:
  LineParser(CliConfig& cfg, std::size_t line, const std::filesystem::path& base_dir)
      : cfg_(cfg), line_(line), base_dir_(base_dir) {}

  void apply(const std::string& key, const std::string& value) {
    if (key == "workspace") {
      cfg_.workspace = path(value);
    } else if (key == "mappings") {
      cfg_.mappings = path(value);
    } else if (key == "format") {
      auto f = parse_format(value);
      if (!f) fail("format must be table, tsv or turtle");
      cfg_.format = *f;
    } else if (key == "scoring.difficulty") {
      cfg_.scoring.difficulty = number(value);
    } else if (key == "scoring.media") {
      cfg_.scoring.media = number(value);
    } else if (key == "scoring.quality") {
      cfg_.scoring.quality = number(value);
    } else if (key == "scoring.duration") {
      cfg_.scoring.duration = number(value);
    } else if (key == "requirements.difficulty_fit") {
      cfg_.requirements.difficulty_fit = number(value);
    } else if (key == "requirements.preference_fit") {
      cfg_.requirements.preference_fit = number(value);
    } else if (key == "requirements.quality") {
      cfg_.requirements.quality = number(value);
    } else if (key == "requirements.path_length") {
      cfg_.requirements.path_length = number(value);
    } else if (key == "k") {
      double k = number(value);
      if (k < 1 || k != static_cast<double>(static_cast<std::size_t>(k))) fail("k must be a positive integer");
      cfg_.requirements.max_paths = static_cast<std::size_t>(k);
    } else if (key == "alpha") {
      cfg_.alpha = number(value);
    } else if (key == "neutral_fill") {
      cfg_.psych.neutral = number(value);
    } else if (key.starts_with("indicator.") && key.size() > 10) {
      indicator(key.substr(10), value);
    } else if (key.starts_with("construct.") && key.size() > 10) {
      construct(key.substr(10), value);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::Config, "config line " + std::to_string(line_) + ": " + message);
  }

  std::filesystem::path path(const std::string& value) const {
    if (value.empty()) fail("empty path");
    std::filesystem::path p(value);
    return p.is_relative() && !base_dir_.empty() ? base_dir_ / p : p;
  }

  double number(const std::string& value) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) fail("'" + value + "' is not a number");
    return v;
  }

  void indicator(const std::string& id, const std::string& value) {
    auto w = words(value);
    if (w.size() != 3 || (w[0] != "static" && w[0] != "dynamic")) {
      fail("indicator expects 'static|dynamic MIN MAX'");
    }
    for (const auto& d : cfg_.psych.indicators) {
      if (d.id == id) fail("indicator '" + id + "' declared twice");
    }
    cfg_.psych.indicators.push_back(
        {id, w[0] == "static" ? IndicatorKind::Static : IndicatorKind::Dynamic, number(w[1]), number(w[2])});
  }

  void construct(const std::string& id, const std::string& value) {
    ConstructDefinition def{id, {}};
    for (const auto& part : words(value)) {
      auto a = part.find(':');
      auto b = part.rfind(':');
      if (a == std::string::npos || a == b) fail("construct term '" + part + "' is not IND:WEIGHT:+|-");
      std::string dir = part.substr(b + 1);
      if (dir != "+" && dir != "-") fail("construct direction must be + or -");
      def.contributions.push_back({part.substr(0, a), number(part.substr(a + 1, b - a - 1)), dir == "+"});
    }
    if (def.contributions.empty()) fail("construct '" + id + "' has no terms");
    for (const auto& c : cfg_.psych.constructs) {
      if (c.id == id) fail("construct '" + id + "' defined twice");
    }
    cfg_.psych.constructs.push_back(std::move(def));
  }

  CliConfig& cfg_;
  std::size_t line_;
  const std::filesystem::path& base_dir_;
};

}  // namespace

CliConfig parse_config(std::string_view text, CliConfig base, const std::filesystem::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string content = trim(line);
    if (content.empty()) continue;
    auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    LineParser(base, line_no, base_dir).apply(trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
  }
  try {
    base.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, std::string("config: ") + e.what());
  }
  return base;
}

CliConfig load_config(const std::filesystem::path& file, CliConfig base) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base), file.parent_path());
}

}  // namespace educor
