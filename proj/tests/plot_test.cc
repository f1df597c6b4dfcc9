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

#include <sstream>

#include <gtest/gtest.h>

#include "umab/errors.h"

namespace umab {
namespace {

std::size_t Count(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

RegretSeries Series(const std::string& name, int rounds) {
  RegretSeries s{name, {}, {}, {}};
  for (int t = 1; t <= rounds; ++t) {
    s.t.push_back(t);
    s.mean.push_back(0.5 * t);
    s.std_dev.push_back(0.1);
  }
  return s;
}

TEST(ParseRegretCsvTest, ReadsColumns) {
  std::istringstream in("t,mean_regret,std_regret\n1,0.5,0\n2,1.5,0.25\n");
  const RegretSeries s = parse_regret_csv(in, "mem", "umab-g");
  EXPECT_EQ(s.name, "umab-g");
  ASSERT_EQ(s.mean.size(), 2u);
  EXPECT_DOUBLE_EQ(s.mean[1], 1.5);
  EXPECT_DOUBLE_EQ(s.std_dev[1], 0.25);
}

TEST(ParseRegretCsvTest, Errors) {
  std::istringstream bad_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(parse_regret_csv(bad_header, "mem", "x"), ParseError);
  std::istringstream bad_cell("t,mean_regret,std_regret\n1,oops,0\n");
  try {
    parse_regret_csv(bad_cell, "mem", "x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
  std::istringstream empty("");
  EXPECT_THROW(parse_regret_csv(empty, "mem", "x"), ParseError);
  EXPECT_THROW(read_regret_csv("/nonexistent/regret.csv"), IoError);
}

TEST(RenderSvgTest, SingleSeries) {
  const PlotResult r = render_svg({Series("umab-g", 2)});
  EXPECT_EQ(Count(r.svg, "<polyline"), 1u);
  EXPECT_EQ(Count(r.svg, "class=\"band\""), 1u);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_NE(r.svg.find("<svg"), std::string::npos);
}

TEST(RenderSvgTest, LegendHasOneEntryPerSeries) {
  std::vector<RegretSeries> all;
  for (int i = 0; i < 5; ++i) all.push_back(Series("s" + std::to_string(i), 10));
  const PlotResult r = render_svg(all);
  EXPECT_EQ(Count(r.svg, "<polyline"), 5u);
  const std::string legend = r.svg.substr(r.svg.find("class=\"legend\""));
  EXPECT_EQ(Count(legend, "<text"), 5u);
}

TEST(RenderSvgTest, TruncatesToShortestWithWarning) {
  const PlotResult r = render_svg({Series("a", 10), Series("b", 4)});
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("4"), std::string::npos);
}

TEST(RenderSvgTest, BandCanBeDisabledAndOutputIsDeterministic) {
  PlotOptions options;
  options.std_band = false;
  const PlotResult a = render_svg({Series("a", 10)}, options);
  EXPECT_EQ(Count(a.svg, "class=\"band\""), 0u);
  EXPECT_EQ(render_svg({Series("a", 10)}, options).svg, a.svg);
}

}  // namespace
}  // namespace umab
