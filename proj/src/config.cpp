// Copyright 2026-present the fracsim project
//
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

#include "fracsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fracsim/errors.hpp"

namespace fracsim {

namespace {

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> keys;
};

using Sections = std::map<std::string, Section>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Sections parse_sections(std::istream& in) {
  Sections sections;
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("unterminated section header", lineno);
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty()) throw ConfigError("empty section name", lineno);
      if (!sections.count(current)) sections[current].line = lineno;
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    if (current.empty()) throw ConfigError("key outside any [section]", lineno);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (sections[current].keys.count(key))
      throw ConfigError("duplicate key '" + key + "'", lineno);
    sections[current].keys[key] = Entry{value, lineno};
  }
  return sections;
}

double parse_double(const Entry& e, const std::string& what) {
  const std::string& s = e.value;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(what + ": not a number: '" + s + "'", e.line);
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!token.empty()) out.push_back(std::exchange(token, ""));
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

class Reader {
 public:
  explicit Reader(Sections s) : sections_(std::move(s)) {}

  const Entry* find(const std::string& section, const std::string& key) {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return nullptr;
    auto kit = sit->second.keys.find(key);
    if (kit == sit->second.keys.end()) return nullptr;
    kit->second.used = true;
    return &kit->second;
  }

  const Entry& require(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) throw ConfigError("missing required key '" + key + "' in [" + section + "]");
    return *e;
  }

  double number(const std::string& section, const std::string& key) {
    const Entry& e = require(section, key);
    return parse_double(e, "[" + section + "] " + key);
  }

  double number_or(const std::string& section, const std::string& key, double fallback) {
    const Entry* e = find(section, key);
    return e ? parse_double(*e, "[" + section + "] " + key) : fallback;
  }

  void check_all_used() const {
    static const char* kKnownSections[] = {"patient", "bis", "schedule", "sweep", "output"};
    for (const auto& [sec, body] : sections_) {
      bool known = false;
      for (const char* k : kKnownSections) known = known || sec == k;
      if (!known) throw ConfigError("unknown section [" + sec + "]", body.line);
      for (const auto& [key, entry] : body.keys) {
        if (!entry.used)
          throw ConfigError("unknown key '" + key + "' in [" + sec + "]", entry.line);
      }
    }
  }

 private:
  Sections sections_;
};

}  // namespace

void ScenarioConfig::validate() const {
  bis.validate();
  schedule.validate();
  if (psi_list.empty()) throw ConfigError("[sweep] psi: list must not be empty");
  if (alpha_list.empty()) throw ConfigError("[sweep] alpha: list must not be empty");
  for (double a : alpha_list) {
    if (!(a > 0.0) || a > 1.0)
      throw ConfigError("[sweep] alpha: values must lie in (0,1]");
  }
  if (!(horizon > 0.0)) throw ConfigError("[schedule] horizon: must be positive");
  if (horizon > schedule.end())
    throw ConfigError("[schedule] horizon: schedule does not cover the horizon");
  if (grid_points < 16) throw ConfigError("[output] grid_points: must be >= 16");
}

std::vector<double> ScenarioConfig::make_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  const double a = schedule.start();
  for (int i = 0; i < grid_points; ++i)
    grid[static_cast<std::size_t>(i)] =
        a + (horizon - a) * (static_cast<double>(i) / static_cast<double>(grid_points - 1));
  grid.back() = horizon;  // guard against an endpoint overshooting by one ulp
  return grid;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Reader reader(parse_sections(in));

  ScenarioConfig cfg;

  cfg.patient.age_years = reader.number("patient", "age");
  cfg.patient.weight_kg = reader.number("patient", "weight");
  cfg.patient.height_cm = reader.number("patient", "height");
  {
    const Entry& e = reader.require("patient", "sex");
    if (e.value == "male") {
      cfg.patient.sex = pkpd::Sex::male;
    } else if (e.value == "female") {
      cfg.patient.sex = pkpd::Sex::female;
    } else {
      throw ConfigError("[patient] sex: expected 'male' or 'female'", e.line);
    }
  }

  cfg.bis.bis0 = reader.number_or("bis", "bis0", cfg.bis.bis0);
  cfg.bis.ec50 = reader.number_or("bis", "ec50", cfg.bis.ec50);
  cfg.bis.gamma = reader.number_or("bis", "gamma", cfg.bis.gamma);

  {
    const Entry& bp = reader.require("schedule", "breakpoints");
    for (const std::string& tok : split_list(bp.value))
      cfg.schedule.breakpoints.push_back(parse_double({tok, bp.line}, "[schedule] breakpoints"));
    const Entry& rt = reader.require("schedule", "rates");
    for (const std::string& tok : split_list(rt.value))
      cfg.schedule.rates.push_back(parse_double({tok, rt.line}, "[schedule] rates"));
    try {
      cfg.schedule.validate();
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("[schedule] ") + err.what(), bp.line);
    }
    cfg.horizon = reader.number_or("schedule", "horizon", cfg.schedule.end());
  }

  {
    const Entry& psi = reader.require("sweep", "psi");
    for (const std::string& tok : split_list(psi.value)) {
      try {
        cfg.psi_list.push_back(PsiFunction::parse(tok));
      } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("[sweep] psi: ") + err.what(), psi.line);
      }
    }
    const Entry& alpha = reader.require("sweep", "alpha");
    for (const std::string& tok : split_list(alpha.value))
      cfg.alpha_list.push_back(parse_double({tok, alpha.line}, "[sweep] alpha"));
  }

  if (const Entry* e = reader.find("output", "dir")) cfg.out_dir = e->value;
  cfg.grid_points = static_cast<int>(reader.number_or("output", "grid_points", 400.0));
  if (const Entry* e = reader.find("output", "formats")) {
    cfg.emit_csv = cfg.emit_svg = cfg.emit_gnuplot = false;
    for (const std::string& tok : split_list(e->value)) {
      if (tok == "csv") {
        cfg.emit_csv = true;
      } else if (tok == "svg") {
        cfg.emit_svg = true;
      } else if (tok == "gnuplot" || tok == "gnuplot-script") {
        cfg.emit_gnuplot = true;
      } else {
        throw ConfigError("[output] formats: unknown format '" + tok + "'", e->line);
      }
    }
  }

  reader.check_all_used();
  cfg.validate();
  return cfg;
}

}  // namespace fracsim
