// Copyright 2026 The swipt-sched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "swipt/errors.h"

namespace swipt::cli {
namespace {

constexpr double kSpeedOfLight = 299'792'458.0;

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& KnownKeys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"system", {"n_users", "tx_power", "noise_power", "eta"}},
      {"fading", {"model", "k_factor"}},
      {"users", {"omega"}},
      {"link_budget",
       {"frequency_hz", "distances_m", "path_loss_exponent", "ref_loss_db_at_1m",
        "tx_antenna_gain_dbi", "rx_antenna_gain_dbi"}},
  };
  return keys;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view StripComment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

std::optional<double> ToDouble(std::string_view s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

class Document {
 public:
  Document(std::string_view text, std::string source) : source_(std::move(source)) {
    std::string current;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = Trim(StripComment(raw));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') Fail(line_no, "", "unterminated section header");
        current = std::string(Trim(line.substr(1, line.size() - 2)));
        if (!KnownKeys().contains(current)) {
          Fail(line_no, current, "unknown section [" + current + "]");
        }
        if (sections_.contains(current)) {
          Fail(line_no, current, "duplicate section [" + current + "]");
        }
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) Fail(line_no, "", "expected 'key = value'");
      const std::string key(Trim(line.substr(0, eq)));
      const std::string value(Trim(line.substr(eq + 1)));
      if (current.empty()) Fail(line_no, key, "key outside of any section");
      if (!KnownKeys().at(current).contains(key)) {
        Fail(line_no, current + "." + key, "unknown key");
      }
      if (value.empty()) Fail(line_no, current + "." + key, "empty value");
      auto& section = sections_[current];
      if (section.contains(key)) Fail(line_no, current + "." + key, "duplicate key");
      section[key] = {value, line_no};
    }
  }

  bool HasSection(const std::string& name) const { return sections_.contains(name); }

  const Entry* Find(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return nullptr;
    auto kt = it->second.find(key);
    return kt == it->second.end() ? nullptr : &kt->second;
  }

  const Entry& Require(const std::string& section, const std::string& key) const {
    const Entry* e = Find(section, key);
    if (e == nullptr) Fail(0, section + "." + key, "missing required field");
    return *e;
  }

  double Number(const std::string& section, const std::string& key) const {
    const Entry& e = Require(section, key);
    return NumberOf(e, section + "." + key);
  }

  std::optional<double> OptionalNumber(const std::string& section,
                                       const std::string& key) const {
    const Entry* e = Find(section, key);
    if (e == nullptr) return std::nullopt;
    return NumberOf(*e, section + "." + key);
  }

  double NumberOf(const Entry& e, const std::string& field) const {
    const auto v = ToDouble(e.value);
    if (!v || !std::isfinite(*v)) Fail(e.line, field, "not a number: '" + e.value + "'");
    return *v;
  }

  std::vector<double> List(const std::string& section, const std::string& key) const {
    const Entry& e = Require(section, key);
    std::vector<double> out;
    std::string_view rest = e.value;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = Trim(rest.substr(0, comma));
      const auto v = ToDouble(item);
      if (!v || !std::isfinite(*v)) {
        Fail(e.line, section + "." + key, "bad list element '" + std::string(item) + "'");
      }
      out.push_back(*v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  double Power(const std::string& section, const std::string& key) const {
    const Entry& e = Require(section, key);
    try {
      return ParsePower(e.value);
    } catch (const DomainError& err) {
      Fail(e.line, section + "." + key, err.what());
    }
  }

  [[noreturn]] void Fail(int line, const std::string& field,
                         const std::string& message) const {
    throw ConfigError(source_, line, field, message);
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

std::string FormatExact(double v) { return fmt::format("{}", v); }

}  // namespace

ConfigError::ConfigError(const std::string& source, int line,
                         const std::string& field, const std::string& message)
    : std::runtime_error(
          line > 0 ? fmt::format("{}:{}: {}{}", source, line,
                                 field.empty() ? "" : field + ": ", message)
                   : fmt::format("{}: {}{}", source,
                                 field.empty() ? "" : field + ": ", message)),
      line_(line),
      field_(field) {}

double FreeSpaceLossDb(double frequency_hz, double distance_m) {
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz /
                           kSpeedOfLight);
}

double LinkBudgetOmega(double frequency_hz, double distance_m, double exponent,
                       std::optional<double> ref_loss_db_at_1m,
                       double tx_gain_dbi, double rx_gain_dbi) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw DomainError("link budget: distance must be > 0");
  }
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
    throw DomainError("link budget: frequency must be > 0");
  }
  const double ref = ref_loss_db_at_1m.value_or(FreeSpaceLossDb(frequency_hz, 1.0));
  const double loss_db =
      ref + 10.0 * exponent * std::log10(distance_m) - tx_gain_dbi - rx_gain_dbi;
  return std::pow(10.0, -loss_db / 10.0);
}

std::vector<double> ResolveLinkBudget(const LinkBudget& budget) {
  std::vector<double> out;
  out.reserve(budget.distances_m.size());
  for (double d : budget.distances_m) {
    out.push_back(LinkBudgetOmega(budget.frequency_hz, d, budget.path_loss_exponent,
                                  budget.ref_loss_db_at_1m,
                                  budget.tx_antenna_gain_dbi,
                                  budget.rx_antenna_gain_dbi));
  }
  return out;
}

double ParsePower(std::string_view text) {
  text = Trim(text);
  const auto space = text.find_first_of(" \t");
  if (space == std::string_view::npos) {
    throw DomainError("power needs a unit (W, mW, dBW or dBm): '" +
                      std::string(text) + "'");
  }
  const auto value = ToDouble(text.substr(0, space));
  const std::string unit(Trim(text.substr(space)));
  if (!value || !std::isfinite(*value)) {
    throw DomainError("bad power value '" + std::string(text) + "'");
  }
  if (unit == "W") return *value;
  if (unit == "mW") return *value * 1e-3;
  if (unit == "dBW") return std::pow(10.0, *value / 10.0);
  if (unit == "dBm") return DbmToWatts(*value);
  throw DomainError("unknown power unit '" + unit + "' (use W, mW, dBW or dBm)");
}

Scenario ParseConfigText(std::string_view text, const std::string& source) {
  const Document doc(text, source);
  Scenario scenario;

  const Entry& n_entry = doc.Require("system", "n_users");
  const double n_value = doc.NumberOf(n_entry, "system.n_users");
  if (n_value < 1 || n_value != std::floor(n_value) || n_value > 1e6) {
    doc.Fail(n_entry.line, "system.n_users", "must be a positive integer");
  }
  const auto n_users = static_cast<std::size_t>(n_value);

  scenario.tx_power_w = doc.Power("system", "tx_power");
  if (!(scenario.tx_power_w > 0.0)) {
    doc.Fail(doc.Require("system", "tx_power").line, "system.tx_power",
             "must be positive");
  }
  scenario.noise_power_w = doc.Power("system", "noise_power");
  if (!(scenario.noise_power_w > 0.0)) {
    doc.Fail(doc.Require("system", "noise_power").line, "system.noise_power",
             "must be positive");
  }
  scenario.eta = doc.Number("system", "eta");
  if (!(scenario.eta >= 0.0 && scenario.eta <= 1.0)) {
    doc.Fail(doc.Require("system", "eta").line, "system.eta", "must lie in [0, 1]");
  }

  const Entry& model = doc.Require("fading", "model");
  double k_factor = 0.0;
  if (model.value == "rayleigh") {
    if (const auto k = doc.OptionalNumber("fading", "k_factor"); k && *k != 0.0) {
      doc.Fail(doc.Find("fading", "k_factor")->line, "fading.k_factor",
               "rayleigh fading requires k_factor = 0");
    }
  } else if (model.value == "ricean") {
    k_factor = doc.Number("fading", "k_factor");
    if (k_factor < 0.0) {
      doc.Fail(doc.Find("fading", "k_factor")->line, "fading.k_factor",
               "must be >= 0");
    }
  } else {
    doc.Fail(model.line, "fading.model", "expected 'rayleigh' or 'ricean'");
  }

  const bool has_users = doc.HasSection("users");
  const bool has_budget = doc.HasSection("link_budget");
  if (has_users == has_budget) {
    doc.Fail(0, "users", "exactly one of [users] and [link_budget] is required");
  }

  std::vector<double> omegas;
  if (has_users) {
    omegas = doc.List("users", "omega");
    const Entry& e = doc.Require("users", "omega");
    if (omegas.size() != n_users) {
      doc.Fail(e.line, "users.omega",
               fmt::format("expected {} values, got {}", n_users, omegas.size()));
    }
    for (double o : omegas) {
      if (!(o > 0.0)) doc.Fail(e.line, "users.omega", "mean gains must be > 0");
    }
  } else {
    LinkBudget budget;
    budget.frequency_hz = doc.Number("link_budget", "frequency_hz");
    budget.distances_m = doc.List("link_budget", "distances_m");
    budget.path_loss_exponent = doc.Number("link_budget", "path_loss_exponent");
    budget.ref_loss_db_at_1m = doc.OptionalNumber("link_budget", "ref_loss_db_at_1m");
    budget.tx_antenna_gain_dbi =
        doc.OptionalNumber("link_budget", "tx_antenna_gain_dbi").value_or(0.0);
    budget.rx_antenna_gain_dbi =
        doc.OptionalNumber("link_budget", "rx_antenna_gain_dbi").value_or(0.0);
    const Entry& e = doc.Require("link_budget", "distances_m");
    if (budget.distances_m.size() != n_users) {
      doc.Fail(e.line, "link_budget.distances_m",
               fmt::format("expected {} values, got {}", n_users,
                           budget.distances_m.size()));
    }
    try {
      omegas = ResolveLinkBudget(budget);
    } catch (const DomainError& err) {
      doc.Fail(e.line, "link_budget", err.what());
    }
  }

  for (double o : omegas) scenario.users.push_back({o, k_factor});
  try {
    scenario.Validate();
  } catch (const DomainError& err) {
    doc.Fail(0, "", err.what());
  }
  return scenario;
}

Scenario ParseConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str(), path.string());
}

std::string EmitConfig(const Scenario& scenario) {
  const double k = scenario.RequireSharedKFactor();
  std::string out;
  out += "[system]\n";
  out += fmt::format("n_users = {}\n", scenario.NumUsers());
  out += fmt::format("tx_power = {} W\n", FormatExact(scenario.tx_power_w));
  out += fmt::format("noise_power = {} W\n", FormatExact(scenario.noise_power_w));
  out += fmt::format("eta = {}\n", FormatExact(scenario.eta));
  out += "[fading]\n";
  out += fmt::format("model = {}\n", k == 0.0 ? "rayleigh" : "ricean");
  out += fmt::format("k_factor = {}\n", FormatExact(k));
  out += "[users]\n";
  std::vector<std::string> omegas;
  for (const auto& u : scenario.users) omegas.push_back(FormatExact(u.omega));
  out += fmt::format("omega = {}\n", fmt::join(omegas, ", "));
  return out;
}

std::filesystem::path ResolveConfigPath(const std::filesystem::path& path) {
  if (std::filesystem::exists(path) || path.is_absolute()) return path;
  if (const char* dir = std::getenv(kConfigDirEnv); dir != nullptr && *dir != '\0') {
    const auto candidate = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

}  // namespace swipt::cli
