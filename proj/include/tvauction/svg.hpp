// Copyright 2026 The tvauction Authors.
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
//
// Minimal standalone SVG line charts for quick inspection of traces.

#ifndef TVAUCTION_SVG_HPP_
#define TVAUCTION_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "tvauction/errors.hpp"

namespace tvauction {

struct SvgSeries {
  std::string name;
  std::string color;
  std::vector<double> xs;
  std::vector<double> ys;
};

inline void write_line_chart(std::ostream& os, const std::string& title,
                             const std::vector<SvgSeries>& series) {
  const double w = 860.0, h = 420.0;
  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 40.0;
  double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, y_lo = HUGE_VAL, y_hi = -HUGE_VAL;
  for (const SvgSeries& s : series) {
    for (double x : s.xs) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    for (double y : s.ys) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const auto px = [&](double x) {
    return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr);
  };
  const auto py = [&](double y) {
    return h - mb - (y - y_lo) / (y_hi - y_lo) * (h - mt - mb);
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" "
        "font-size=\"15\">"
     << title << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << w - ml - mr
     << "\" height=\"" << h - mt - mb
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  const auto label = [&](double x, double y, double value,
                         const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\""
       << anchor << "\">" << value << "</text>\n";
  };
  label(ml - 6, py(y_lo) + 4, y_lo, "end");
  label(ml - 6, py(y_hi) + 4, y_hi, "end");
  label(px(x_lo), h - mb + 16, x_lo, "middle");
  label(px(x_hi), h - mb + 16, x_hi, "middle");
  double legend_y = mt + 16;
  for (const SvgSeries& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      os << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << w - mr - 8 << "\" y=\"" << legend_y
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" "
          "fill=\""
       << s.color << "\">" << s.name << "</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
}

inline void write_line_chart(const std::filesystem::path& path,
                             const std::string& title,
                             const std::vector<SvgSeries>& series) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write svg file '" + path.string() + "'");
  write_line_chart(os, title, series);
}

}  // namespace tvauction

#endif  // TVAUCTION_SVG_HPP_
