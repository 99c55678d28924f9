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

#pragma once

#include <string>
#include <vector>

namespace fracsim::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> y_guides;  // dashed horizontal guide lines
};

/// Renders panels into a self-contained SVG document, laid out in up to two
/// columns. Output is deterministic: fixed palette, fixed number formatting,
/// no timestamps.
std::string render_svg(const std::string& title, const std::vector<Panel>& panels);

void write_file(const std::string& path, const std::string& content);

}  // namespace fracsim::plot
