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

#include "umab/plot.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "umab/errors.h"

namespace umab {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string Num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  std::string s(buffer);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string Label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool ParseCell(std::string_view cell, double& value) {
  while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.remove_suffix(1);
  while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return !cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size() &&
         std::isfinite(value);
}

}  // namespace

RegretSeries parse_regret_csv(std::istream& in, const std::string& source,
                              const std::string& name) {
  RegretSeries series;
  series.name = name;
  std::string line;
  std::size_t row = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    if (!header) {
      if (line.rfind("t,mean_regret,std_regret", 0) != 0) {
        throw ParseError(source, row, 0, "expected header t,mean_regret,std_regret");
      }
      header = true;
      continue;
    }
    std::string_view rest(line);
    double cells[3];
    for (int c = 0; c < 3; ++c) {
      const std::size_t comma = rest.find(',');
      const std::string_view cell = rest.substr(0, comma);
      if ((c < 2 && comma == std::string_view::npos) ||
          (c == 2 && comma != std::string_view::npos)) {
        throw ParseError(source, row, 0, "expected 3 columns");
      }
      if (!ParseCell(cell, cells[c])) {
        throw ParseError(source, row, std::size_t(c + 1),
                         "non-numeric cell '" + std::string(cell) + "'");
      }
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    series.t.push_back(cells[0]);
    series.mean.push_back(cells[1]);
    series.std_dev.push_back(cells[2]);
  }
  if (!header) throw ParseError(source, 0, 0, "empty file");
  if (series.t.empty()) throw ParseError(source, 0, 0, "no data rows");
  return series;
}

RegretSeries read_regret_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_regret_csv(in, path, std::filesystem::path(path).stem().string());
}

PlotResult render_svg(std::vector<RegretSeries> series, const PlotOptions& options) {
  if (series.empty()) throw UsageError("render_svg: no series");
  PlotResult result;
  std::size_t shortest = std::numeric_limits<std::size_t>::max();
  std::size_t longest = 0;
  for (const auto& s : series) {
    shortest = std::min(shortest, s.t.size());
    longest = std::max(longest, s.t.size());
  }
  if (shortest != longest) {
    result.warnings.push_back("series lengths differ; truncating to " +
                              std::to_string(shortest) + " rounds");
    for (auto& s : series) {
      s.t.resize(shortest);
      s.mean.resize(shortest);
      s.std_dev.resize(shortest);
    }
  }

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      const double band = options.std_band ? s.std_dev[i] : 0.0;
      x_min = std::min(x_min, s.t[i]);
      x_max = std::max(x_max, s.t[i]);
      y_min = std::min(y_min, s.mean[i] - band);
      y_max = std::max(y_max, s.mean[i] + band);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;

  const double left = 80, right = 180, top = 40, bottom = 60;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
     << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
     << options.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << Num(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << Escape(options.title) << "</text>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(top + plot_h) << "\" x2=\""
     << Num(left + plot_w) << "\" y2=\"" << Num(top + plot_h) << "\"/>\n";
  os << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(top) << "\" x2=\"" << Num(left)
     << "\" y2=\"" << Num(top + plot_h) << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    os << "<text x=\"" << Num(sx(fx)) << "\" y=\"" << Num(top + plot_h + 16)
       << "\" text-anchor=\"middle\">" << Label(fx) << "</text>\n";
    os << "<text x=\"" << Num(left - 6) << "\" y=\"" << Num(sy(fy) + 4)
       << "\" text-anchor=\"end\">" << Label(fy) << "</text>\n";
  }
  os << "<text x=\"" << Num(left + plot_w / 2) << "\" y=\"" << Num(options.height - 16)
     << "\" text-anchor=\"middle\">round t</text>\n";
  os << "<text x=\"18\" y=\"" << Num(top + plot_h / 2) << "\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 18 " << Num(top + plot_h / 2) << ")\">regret</text>\n";
  os << "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& data = series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    if (options.std_band) {
      os << "<polygon class=\"band\" fill=\"" << color << "\" fill-opacity=\"0.15\" "
         << "stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < data.t.size(); ++i) {
        os << (i ? " " : "") << Num(sx(data.t[i])) << ','
           << Num(sy(data.mean[i] + data.std_dev[i]));
      }
      for (std::size_t i = data.t.size(); i-- > 0;) {
        os << ' ' << Num(sx(data.t[i])) << ',' << Num(sy(data.mean[i] - data.std_dev[i]));
      }
      os << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < data.t.size(); ++i) {
      os << (i ? " " : "") << Num(sx(data.t[i])) << ',' << Num(sy(data.mean[i]));
    }
    os << "\"/>\n";
  }

  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = top + 10 + 20.0 * double(s);
    const double x = left + plot_w + 16;
    os << "<line x1=\"" << Num(x) << "\" y1=\"" << Num(y) << "\" x2=\"" << Num(x + 24)
       << "\" y2=\"" << Num(y) << "\" stroke=\"" << kPalette[s % std::size(kPalette)]
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << Num(x + 30) << "\" y=\"" << Num(y + 4) << "\">"
       << Escape(series[s].name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  result.svg = os.str();
  return result;
}

}  // namespace umab
