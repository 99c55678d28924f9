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

#include "fracsim/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracsim::plot {

namespace {

constexpr int kPanelW = 460;
constexpr int kPanelH = 340;
constexpr int kMarginL = 62;
constexpr int kMarginR = 14;
constexpr int kMarginT = 34;
constexpr int kMarginB = 46;

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range axis_range(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad};
}

void render_panel(std::ostringstream& os, const Panel& panel, double ox, double oy) {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  bool first = true;
  for (const Series& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xlo = xhi = s.x[i];
        ylo = yhi = s.y[i];
        first = false;
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  for (double g : panel.y_guides) {
    ylo = std::min(ylo, g);
    yhi = std::max(yhi, g);
  }
  const Range xr = axis_range(xlo, xhi);
  const Range yr = axis_range(ylo, yhi);

  const double px = ox + kMarginL;
  const double py = oy + kMarginT;
  const double pw = kPanelW - kMarginL - kMarginR;
  const double ph = kPanelH - kMarginT - kMarginB;
  auto map_x = [&](double v) { return px + pw * (v - xr.lo) / (xr.hi - xr.lo); };
  auto map_y = [&](double v) { return py + ph * (1.0 - (v - yr.lo) / (yr.hi - yr.lo)); };

  os << "<rect x='" << fmt(px) << "' y='" << fmt(py) << "' width='" << fmt(pw) << "' height='"
     << fmt(ph) << "' fill='white' stroke='#333333' stroke-width='1'/>\n";
  os << "<text x='" << fmt(ox + kPanelW / 2.0) << "' y='" << fmt(oy + 20.0)
     << "' text-anchor='middle' font-size='14' font-family='sans-serif'>" << panel.title
     << "</text>\n";

  for (int k = 0; k <= 5; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    os << "<line x1='" << fmt(map_x(fx)) << "' y1='" << fmt(py + ph) << "' x2='" << fmt(map_x(fx))
       << "' y2='" << fmt(py + ph + 4.0) << "' stroke='#333333'/>\n";
    os << "<text x='" << fmt(map_x(fx)) << "' y='" << fmt(py + ph + 17.0)
       << "' text-anchor='middle' font-size='10' font-family='sans-serif'>" << fmt(fx, "%.3g")
       << "</text>\n";
    os << "<line x1='" << fmt(px - 4.0) << "' y1='" << fmt(map_y(fy)) << "' x2='" << fmt(px)
       << "' y2='" << fmt(map_y(fy)) << "' stroke='#333333'/>\n";
    os << "<text x='" << fmt(px - 7.0) << "' y='" << fmt(map_y(fy) + 3.0)
       << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << fmt(fy, "%.3g")
       << "</text>\n";
  }
  os << "<text x='" << fmt(px + pw / 2.0) << "' y='" << fmt(py + ph + 34.0)
     << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << panel.x_label
     << "</text>\n";
  os << "<text x='" << fmt(ox + 14.0) << "' y='" << fmt(py + ph / 2.0)
     << "' text-anchor='middle' font-size='11' font-family='sans-serif' transform='rotate(-90 "
     << fmt(ox + 14.0) << " " << fmt(py + ph / 2.0) << ")'>" << panel.y_label << "</text>\n";

  for (double g : panel.y_guides) {
    os << "<line x1='" << fmt(px) << "' y1='" << fmt(map_y(g)) << "' x2='" << fmt(px + pw)
       << "' y2='" << fmt(map_y(g))
       << "' stroke='#888888' stroke-width='1' stroke-dasharray='6,4'/>\n";
  }

  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const Series& s = panel.series[si];
    const char* color = kPalette[si % 6];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << fmt(map_x(s.x[i])) << ',' << fmt(map_y(s.y[i]));
    }
    os << "'/>\n";
    const double ly = py + 14.0 + 14.0 * static_cast<double>(si);
    os << "<line x1='" << fmt(px + pw - 96.0) << "' y1='" << fmt(ly - 4.0) << "' x2='"
       << fmt(px + pw - 78.0) << "' y2='" << fmt(ly - 4.0) << "' stroke='" << color
       << "' stroke-width='2'/>\n";
    os << "<text x='" << fmt(px + pw - 74.0) << "' y='" << fmt(ly)
       << "' font-size='10' font-family='sans-serif'>" << s.label << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<Panel>& panels) {
  const int cols = panels.size() > 1 ? 2 : 1;
  const int rows = static_cast<int>((panels.size() + cols - 1) / static_cast<std::size_t>(cols));
  const int width = kPanelW * cols;
  const int height = kPanelH * rows + 26;

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
     << "' viewBox='0 0 " << width << " " << height << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << width / 2 << "' y='18' text-anchor='middle' font-size='15' "
     << "font-family='sans-serif' font-weight='bold'>" << title << "</text>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double ox = static_cast<double>(kPanelW * (i % static_cast<std::size_t>(cols)));
    const double oy = 26.0 + static_cast<double>(kPanelH * (i / static_cast<std::size_t>(cols)));
    render_panel(os, panels[i], ox, oy);
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

}  // namespace fracsim::plot
