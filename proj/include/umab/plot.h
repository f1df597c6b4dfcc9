// Copyright 2026 The UMAB Authors. All rights reserved.
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

#ifndef UMAB_PLOT_H_
#define UMAB_PLOT_H_

// Self-contained SVG line charts of regret curves.

#include <istream>
#include <string>
#include <vector>

namespace umab {

struct RegretSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> mean;
  std::vector<double> std_dev;
};

// Reads a "t,mean_regret,std_regret" file written by persist().
RegretSeries read_regret_csv(const std::string& path);
RegretSeries parse_regret_csv(std::istream& in, const std::string& source,
                              const std::string& name);

struct PlotOptions {
  bool std_band = true;
  int width = 800;
  int height = 500;
  std::string title = "Cumulative pseudo-regret";
};

struct PlotResult {
  std::string svg;
  std::vector<std::string> warnings;
};

// Series of different lengths are truncated to the shortest one.
PlotResult render_svg(std::vector<RegretSeries> series, const PlotOptions& options = {});

}  // namespace umab

#endif  // UMAB_PLOT_H_
