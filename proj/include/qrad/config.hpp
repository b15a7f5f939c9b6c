#ifndef QRAD_CONFIG_HPP
#define QRAD_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// Line-oriented scenario configuration: "[section]" headers and
// "key = value" entries, '#' comments.  Unknown sections or keys are
// hard errors; validation reports every problem, not just the first.

namespace qrad::config {

enum class ScenarioKind {
  mirror,
  cavity,
  dielectric_small_r,
  dielectric_large_r,
  frw,
};

inline std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::mirror: return "mirror";
    case ScenarioKind::cavity: return "cavity";
    case ScenarioKind::dielectric_small_r: return "dielectric-smallR";
    case ScenarioKind::dielectric_large_r: return "dielectric-largeR";
    case ScenarioKind::frw: return "frw";
  }
  return "?";
}

struct ParseError {
  int line = 0;
  std::string message;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::mirror;
  // section.key -> value list (space-separated numbers or a word).
  std::map<std::string, std::vector<double>> numbers;
  std::map<std::string, std::string> words;
  std::vector<std::string> warnings;

  double number(const std::string& key, double fallback) const {
    auto it = numbers.find(key);
    return it == numbers.end() ? fallback : it->second.front();
  }
  std::vector<double> list(const std::string& key,
                           std::vector<double> fallback) const {
    auto it = numbers.find(key);
    return it == numbers.end() ? fallback : it->second;
  }
  std::string word(const std::string& key, const std::string& fallback) const {
    auto it = words.find(key);
    return it == words.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const {
    return numbers.count(key) > 0 || words.count(key) > 0;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Allowed keys per scenario kind ("section.key").  "*" entries are
// shared by all kinds.
inline const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"*",
       {"scenario.kind", "temperature.T", "temperature.kelvin",
        "numerics.tolerance", "numerics.grid_nodes"}},
      {"mirror", {"profile.family", "profile.amplitude", "profile.tau",
                  "profile.omega0"}},
      {"cavity", {"cavity.edge", "cavity.edge_cm", "cavity.epsilon",
                  "cavity.omega_ts", "cavity.field_grid"}},
      {"dielectric-smallR",
       {"profile.family", "profile.amplitude", "profile.tau",
        "dielectric.theta0", "dielectric.eps_inf"}},
      {"dielectric-largeR",
       {"dielectric.epsilon", "dielectric.omega_drive", "dielectric.duration",
        "dielectric.eps_inf", "grid.omega_min", "grid.omega_max",
        "grid.count"}},
      {"frw",
       {"frw.family", "frw.omega_in", "frw.omega_out", "frw.ramp_time",
        "frw.height", "grid.omega_min", "grid.omega_max", "grid.count"}},
  };
  return s;
}

inline std::optional<ScenarioKind> kind_from_string(const std::string& s) {
  if (s == "mirror") return ScenarioKind::mirror;
  if (s == "cavity") return ScenarioKind::cavity;
  if (s == "dielectric-smallR") return ScenarioKind::dielectric_small_r;
  if (s == "dielectric-largeR") return ScenarioKind::dielectric_large_r;
  if (s == "frw") return ScenarioKind::frw;
  return std::nullopt;
}

}  // namespace detail

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty() && config.has_value(); }

  std::string error_text() const {
    std::ostringstream os;
    for (const auto& e : errors)
      os << "line " << e.line << ": " << e.message << "\n";
    return os.str();
  }
};

// Parses and fully validates a configuration document.  All validation
// errors are collected; config is only produced when there are none.
inline ParseResult parse_scenario(const std::string& text) {
  ParseResult result;
  ScenarioConfig cfg;
  std::vector<ParseError>& errors = result.errors;

  std::map<std::string, std::pair<int, std::string>> raw;  // key -> line,value
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back({lineno, "unterminated section header"});
        continue;
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) errors.push_back({lineno, "empty section name"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back({lineno, "expected 'key = value'"});
      continue;
    }
    if (section.empty()) {
      errors.push_back({lineno, "key outside of any [section]"});
      continue;
    }
    const std::string key = section + "." + detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) {
      errors.push_back({lineno, "empty value for '" + key + "'"});
      continue;
    }
    if (raw.count(key))
      errors.push_back({lineno, "duplicate key '" + key + "'"});
    raw[key] = {lineno, value};
  }

  // Scenario kind first; it selects the schema.
  auto kind_it = raw.find("scenario.kind");
  if (kind_it == raw.end()) {
    errors.push_back({0, "missing required key 'scenario.kind'"});
    return result;
  }
  const auto kind = detail::kind_from_string(kind_it->second.second);
  if (!kind) {
    errors.push_back({kind_it->second.first,
                      "unknown scenario kind '" + kind_it->second.second +
                          "' (mirror | cavity | dielectric-smallR | "
                          "dielectric-largeR | frw)"});
    return result;
  }
  cfg.kind = *kind;

  const auto& allowed_kind = detail::schema().at(to_string(cfg.kind));
  const auto& allowed_all = detail::schema().at("*");
  for (const auto& [key, lv] : raw) {
    if (!allowed_all.count(key) && !allowed_kind.count(key)) {
      errors.push_back({lv.first, "unknown key '" + key + "' for scenario '" +
                                      to_string(cfg.kind) + "'"});
      continue;
    }
    // Word-valued keys.
    if (key == "scenario.kind" || key == "profile.family" ||
        key == "frw.family") {
      cfg.words[key] = lv.second;
      continue;
    }
    std::istringstream vs(lv.second);
    std::vector<double> values;
    double x;
    while (vs >> x) values.push_back(x);
    if (values.empty() || !vs.eof()) {
      errors.push_back({lv.first, "expected numeric value(s) for '" + key + "'"});
      continue;
    }
    cfg.numbers[key] = values;
  }

  // Cross-field physics validation (module preconditions).
  auto require_positive = [&](const std::string& key, const char* what) {
    if (cfg.has(key) && !(cfg.number(key, 1.0) > 0.0))
      errors.push_back({raw.count(key) ? raw[key].first : 0,
                        std::string(what) + " must be positive ('" + key + "')"});
  };
  for (double t : cfg.list("temperature.T", {}))
    if (t < 0.0)
      errors.push_back(
          {raw["temperature.T"].first,
           "negative temperature violates the Temperature invariant "
           "(beta > 0 or the distinguished T=0 value)"});
  if (cfg.has("temperature.kelvin") && cfg.has("temperature.T"))
    errors.push_back({raw["temperature.kelvin"].first,
                      "give either temperature.T or temperature.kelvin"});
  require_positive("profile.tau", "profile width tau");
  require_positive("profile.omega0", "carrier frequency");
  require_positive("cavity.edge", "cavity edge");
  require_positive("cavity.edge_cm", "cavity edge");
  require_positive("dielectric.eps_inf", "asymptotic permittivity");
  require_positive("dielectric.omega_drive", "drive frequency");
  require_positive("frw.omega_in", "Omega_in");
  require_positive("frw.omega_out", "Omega_out");
  require_positive("frw.ramp_time", "ramp time");
  if (cfg.kind == ScenarioKind::cavity && cfg.number("cavity.epsilon", 0.0) > 1e-2)
    cfg.warnings.push_back(
        "cavity.epsilon > 1e-2: outside the eps << 1 regime");
  const std::string family = cfg.word("profile.family", "gaussian");
  if ((cfg.kind == ScenarioKind::mirror ||
       cfg.kind == ScenarioKind::dielectric_small_r) &&
      family != "gaussian" && family != "windowed-sine")
    errors.push_back({0, "profile.family must be gaussian or windowed-sine"});
  if (cfg.kind == ScenarioKind::frw) {
    const std::string ff = cfg.word("frw.family", "tanh");
    if (ff != "tanh" && ff != "bump")
      errors.push_back({0, "frw.family must be tanh or bump"});
  }

  if (errors.empty()) result.config = cfg;
  return result;
}

// Canonical rendering; parse_scenario(render(cfg)) reproduces cfg.
inline std::string render(const ScenarioConfig& cfg) {
  std::map<std::string, std::vector<std::string>> by_section;
  auto add = [&](const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    by_section[key.substr(0, dot)].push_back(key.substr(dot + 1) + " = " + value);
  };
  for (const auto& [k, v] : cfg.words)
    if (k != "scenario.kind") add(k, v);
  for (const auto& [k, vals] : cfg.numbers) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < vals.size(); ++i)
      os << (i ? " " : "") << vals[i];
    add(k, os.str());
  }
  std::ostringstream out;
  out << "[scenario]\nkind = " << to_string(cfg.kind) << "\n";
  for (auto& [sec, lines] : by_section) {
    if (sec == "scenario" && lines.empty()) continue;
    out << "[" << sec << "]\n";
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out << l << "\n";
  }
  return out.str();
}

}  // namespace qrad::config

#endif  // QRAD_CONFIG_HPP
