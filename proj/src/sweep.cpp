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

#include "fracsim/sweep.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracsim/abm.hpp"
#include "fracsim/svg_plot.hpp"
#include "fracsim/version.hpp"

namespace fs = std::filesystem;

namespace fracsim {

namespace {

std::string num(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string psi_label(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c != ':') out.push_back(c);
  }
  return out;
}

std::string alpha_label(double a) { return num(a, "%g"); }

std::uint64_t fnv64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct RunData {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> bis;
};

std::string render_run_csv(const RunData& d) {
  std::ostringstream os;
  os << "t,y1,y2,y3,y4,BIS\n";
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    os << num(d.times[i]);
    for (double v : d.states[i]) os << ',' << num(v);
    os << ',' << num(d.bis[i]) << '\n';
  }
  return os.str();
}

// The closed form can leave an effect-site value a few ulps below zero at the
// start of the horizon; clamp those before the Hill sigmoid, which rejects
// negative concentrations.
double safe_y4(double y4) {
  if (y4 < 0.0 && y4 > -1e-9) return 0.0;
  return y4;
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path, std::size_t ncols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("emit_plots: missing CSV '" + path + "'");
  std::vector<std::vector<double>> cols(ncols);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::size_t comma = line.find(',', pos);
      cols[c].push_back(std::strtod(line.c_str() + pos, nullptr));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return cols;
}

struct GroupSpec {
  std::string name;                 // "psi_identity" or "alpha_0.95"
  std::string fixed_descr;          // human-readable fixed coordinate
  bool alpha_sweep = false;         // true: members vary in alpha
  std::vector<std::size_t> members; // indices into manifest.runs
};

std::vector<GroupSpec> make_groups(const std::vector<RunRecord>& runs) {
  std::vector<std::string> psis;
  std::vector<double> alphas;
  for (const RunRecord& r : runs) {
    if (std::find(psis.begin(), psis.end(), r.psi_name) == psis.end()) psis.push_back(r.psi_name);
    if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end()) alphas.push_back(r.alpha);
  }
  std::sort(psis.begin(), psis.end());
  std::sort(alphas.begin(), alphas.end());

  std::vector<GroupSpec> groups;
  for (const std::string& p : psis) {
    GroupSpec g;
    g.name = "psi_" + psi_label(p);
    g.fixed_descr = "psi = " + p;
    g.alpha_sweep = true;
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (runs[i].psi_name == p) g.members.push_back(i);
    groups.push_back(std::move(g));
  }
  for (double a : alphas) {
    GroupSpec g;
    g.name = "alpha_" + alpha_label(a);
    g.fixed_descr = "alpha = " + alpha_label(a);
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (runs[i].alpha == a) g.members.push_back(i);
    groups.push_back(std::move(g));
  }
  return groups;
}

std::string member_label(const RunRecord& r, bool alpha_sweep) {
  return alpha_sweep ? "alpha=" + alpha_label(r.alpha) : "psi=" + r.psi_name;
}

}  // namespace

bool RunManifest::any_failed() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunRecord& r) { return r.failed; });
}

std::string RunManifest::to_json(const ScenarioConfig& cfg) const {
  nlohmann::json j;
  j["version"] = version;

  nlohmann::json echo;
  echo["patient"] = {{"age", cfg.patient.age_years},
                     {"weight", cfg.patient.weight_kg},
                     {"height", cfg.patient.height_cm},
                     {"sex", cfg.patient.sex == pkpd::Sex::male ? "male" : "female"}};
  echo["bis"] = {{"bis0", cfg.bis.bis0}, {"ec50", cfg.bis.ec50}, {"gamma", cfg.bis.gamma}};
  echo["schedule"] = {{"breakpoints", cfg.schedule.breakpoints}, {"rates", cfg.schedule.rates}};
  nlohmann::json psis = nlohmann::json::array();
  for (const PsiFunction& p : cfg.psi_list) psis.push_back(p.name());
  echo["sweep"] = {{"psi", std::move(psis)}, {"alpha", cfg.alpha_list}};
  echo["horizon"] = cfg.horizon;
  echo["grid_points"] = cfg.grid_points;
  j["config"] = std::move(echo);

  nlohmann::json jruns = nlohmann::json::array();
  for (const RunRecord& r : runs) {
    nlohmann::json jr;
    jr["psi"] = r.psi_name;
    jr["alpha"] = r.alpha;
    jr["label"] = r.label;
    jr["failed"] = r.failed;
    if (r.failed) {
      jr["error"] = r.error;
    } else {
      jr["csv"] = r.csv_file;
      jr["checksum_fnv64"] = r.checksum;
      jr["bis_end"] = r.bis_end;
      jr["band_deviation"] = r.band_deviation;
      if (r.oracle_max_rel_diff) jr["oracle_max_rel_diff"] = *r.oracle_max_rel_diff;
    }
    jruns.push_back(std::move(jr));
  }
  j["runs"] = std::move(jruns);

  nlohmann::json jgroups = nlohmann::json::array();
  for (const FigureGroup& g : groups) {
    nlohmann::json jg;
    jg["name"] = g.name;
    jg["combined_csv"] = g.combined_csv;
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i : g.run_indices) members.push_back(runs[i].label);
    jg["runs"] = std::move(members);
    jgroups.push_back(std::move(jg));
  }
  j["groups"] = std::move(jgroups);

  const TruncationPolicy policy;
  j["truncation_policy"] = {{"rel_tol", policy.rel_tol},
                            {"consecutive_small_terms", policy.consecutive_small_terms},
                            {"max_terms", policy.max_terms}};
  return j.dump(2) + "\n";
}

RunManifest run_sweep(const ScenarioConfig& cfg, const SweepOptions& opts) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);

  const pkpd::PkpdParams params = pkpd::schnider_params(cfg.patient);
  const pkpd::SystemMatrices sys_mats = pkpd::assemble_system(params);
  const std::vector<double> grid = cfg.make_grid();

  // Sorted by (psi, alpha) so the manifest does not depend on list order.
  std::vector<std::pair<std::string, double>> pairs;
  for (const PsiFunction& psi : cfg.psi_list)
    for (double a : cfg.alpha_list) pairs.emplace_back(psi.name(), a);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  RunManifest manifest;
  manifest.version = kVersion;

  std::vector<RunData> data(pairs.size());
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [psi_name, alpha] = pairs[idx];
    RunRecord rec;
    rec.psi_name = psi_name;
    rec.alpha = alpha;
    rec.label = psi_label(psi_name) + "_alpha" + alpha_label(alpha);
    rec.csv_file = "run_" + rec.label + ".csv";
    try {
      LinearFracSystem sys{sys_mats.a, sys_mats.b, alpha, PsiFunction::parse(psi_name),
                           cfg.schedule.start(), Vec(4, 0.0)};
      const Trajectory traj = solve_piecewise(sys, cfg.schedule, grid);

      RunData& d = data[idx];
      d.times = traj.times;
      d.states = traj.states;
      d.bis.reserve(grid.size());
      for (const Vec& y : traj.states) d.bis.push_back(pkpd::bis(safe_y4(y[3]), cfg.bis));

      const std::string csv = render_run_csv(d);
      plot::write_file((fs::path(cfg.out_dir) / rec.csv_file).string(), csv);
      rec.checksum = hex64(fnv64(csv));
      rec.bis_end = d.bis.back();
      rec.band_deviation = !(rec.bis_end >= 40.0 && rec.bis_end <= 60.0);

      if (opts.oracle_check) {
        const Trajectory oracle = oracle_substitution_solve(sys, cfg.schedule, grid, opts.oracle_steps);
        Vec scale(4, 1e-12);
        for (const Vec& y : oracle.states)
          for (std::size_t i = 0; i < 4; ++i) scale[i] = std::max(scale[i], std::abs(y[i]));
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
          for (std::size_t i = 0; i < 4; ++i)
            worst = std::max(worst,
                             std::abs(traj.states[j][i] - oracle.states[j][i]) / scale[i]);
        rec.oracle_max_rel_diff = worst;
      }
    } catch (const std::exception& err) {
      rec.failed = true;
      rec.error = err.what();
    }
    manifest.runs.push_back(std::move(rec));
  }

  // Combined BIS comparison CSV per figure grouping.
  for (const GroupSpec& spec : make_groups(manifest.runs)) {
    FigureGroup group;
    group.name = spec.name;
    group.run_indices = spec.members;

    std::vector<std::size_t> ok;
    for (std::size_t i : spec.members)
      if (!manifest.runs[i].failed) ok.push_back(i);
    if (!ok.empty()) {
      std::ostringstream os;
      os << "t";
      for (std::size_t i : ok) os << ",BIS_" << manifest.runs[i].label;
      os << '\n';
      for (std::size_t row = 0; row < grid.size(); ++row) {
        os << num(grid[row]);
        for (std::size_t i : ok) os << ',' << num(data[i].bis[row]);
        os << '\n';
      }
      group.combined_csv = "group_" + spec.name + "_bis.csv";
      plot::write_file((fs::path(cfg.out_dir) / group.combined_csv).string(), os.str());
    }
    manifest.groups.push_back(std::move(group));
  }

  plot::write_file((fs::path(cfg.out_dir) / "manifest.json").string(), manifest.to_json(cfg));
  return manifest;
}

std::vector<std::string> emit_plots(const RunManifest& manifest, const ScenarioConfig& cfg) {
  std::vector<std::string> written;
  const std::vector<GroupSpec> groups = make_groups(manifest.runs);
  static const char* kStateNames[4] = {"y1 blood (mg)", "y2 muscle (mg)", "y3 fat (mg)",
                                       "y4 effect site (mg/l)"};

  for (const GroupSpec& spec : groups) {
    std::vector<std::size_t> ok;
    for (std::size_t i : spec.members)
      if (!manifest.runs[i].failed) ok.push_back(i);
    if (ok.empty()) continue;

    std::vector<std::vector<std::vector<double>>> cols;  // per run: 6 columns
    for (std::size_t i : ok) {
      const std::string path = (fs::path(cfg.out_dir) / manifest.runs[i].csv_file).string();
      if (!fs::exists(path))
        throw std::runtime_error("emit_plots: missing CSV for run '" + manifest.runs[i].label +
                                 "': " + path);
      cols.push_back(read_csv_columns(path, 6));
    }

    // State trajectories, 2x2 panels.
    std::vector<plot::Panel> panels(4);
    for (int c = 0; c < 4; ++c) {
      panels[static_cast<std::size_t>(c)].title = kStateNames[c];
      panels[static_cast<std::size_t>(c)].x_label = "t (min)";
      panels[static_cast<std::size_t>(c)].y_label = kStateNames[c];
      for (std::size_t k = 0; k < ok.size(); ++k) {
        plot::Series s;
        s.label = member_label(manifest.runs[ok[k]], spec.alpha_sweep);
        s.x = cols[k][0];
        s.y = cols[k][static_cast<std::size_t>(c) + 1];
        panels[static_cast<std::size_t>(c)].series.push_back(std::move(s));
      }
    }
    const std::string states_svg = "fig_" + spec.name + "_states.svg";
    plot::write_file((fs::path(cfg.out_dir) / states_svg).string(),
                     plot::render_svg("State trajectories, " + spec.fixed_descr, panels));
    written.push_back(states_svg);

    // BIS panel with the anesthesia band guides.
    plot::Panel bis_panel;
    bis_panel.title = "Controlled BIS, " + spec.fixed_descr;
    bis_panel.x_label = "t (min)";
    bis_panel.y_label = "BIS";
    bis_panel.y_guides = {40.0, 60.0};
    for (std::size_t k = 0; k < ok.size(); ++k) {
      plot::Series s;
      s.label = member_label(manifest.runs[ok[k]], spec.alpha_sweep);
      s.x = cols[k][0];
      s.y = cols[k][5];
      bis_panel.series.push_back(std::move(s));
    }
    const std::string bis_svg = "fig_" + spec.name + "_bis.svg";
    plot::write_file((fs::path(cfg.out_dir) / bis_svg).string(),
                     plot::render_svg("BIS, " + spec.fixed_descr, {bis_panel}));
    written.push_back(bis_svg);

    // Equivalent gnuplot script.
    std::ostringstream gp;
    gp << "# gnuplot script for figure grouping " << spec.name << "\n";
    gp << "set datafile separator ','\n";
    gp << "set terminal svg size 920,680 background 'white'\n";
    gp << "set xlabel 't (min)'\n\n";
    gp << "set output 'fig_" << spec.name << "_bis.gnuplot.svg'\n";
    gp << "set ylabel 'BIS'\n";
    gp << "set arrow 1 from graph 0, first 40 to graph 1, first 40 nohead dt 2 lc 'gray'\n";
    gp << "set arrow 2 from graph 0, first 60 to graph 1, first 60 nohead dt 2 lc 'gray'\n";
    gp << "plot";
    for (std::size_t k = 0; k < ok.size(); ++k) {
      if (k) gp << ",";
      gp << " '" << manifest.runs[ok[k]].csv_file << "' using 1:6 with lines title '"
         << member_label(manifest.runs[ok[k]], spec.alpha_sweep) << "'";
    }
    gp << "\n\nunset arrow 1\nunset arrow 2\n";
    gp << "set output 'fig_" << spec.name << "_states.gnuplot.svg'\n";
    gp << "set multiplot layout 2,2\n";
    for (int c = 0; c < 4; ++c) {
      gp << "set ylabel '" << kStateNames[c] << "'\n";
      gp << "plot";
      for (std::size_t k = 0; k < ok.size(); ++k) {
        if (k) gp << ",";
        gp << " '" << manifest.runs[ok[k]].csv_file << "' using 1:" << c + 2
           << " with lines title '" << member_label(manifest.runs[ok[k]], spec.alpha_sweep) << "'";
      }
      gp << "\n";
    }
    gp << "unset multiplot\n";
    const std::string gp_file = "fig_" + spec.name + ".gp";
    plot::write_file((fs::path(cfg.out_dir) / gp_file).string(), gp.str());
    written.push_back(gp_file);
  }
  return written;
}

}  // namespace fracsim
