// Copyright 2026 The combo Authors. All Rights Reserved.
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

#include "combo/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "combo/bounds.hpp"

namespace combo {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 640.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 530.0;

constexpr std::array<const char*, 10> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
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

}  // namespace

std::string render_svg(const std::vector<PhaseCurve>& curves,
                       const SvgOptions& options) {
  if (curves.empty()) throw std::invalid_argument("render_svg: no curves");

  std::size_t k_lo = SIZE_MAX;
  std::size_t k_hi = 0;
  for (const PhaseCurve& c : curves) {
    for (const PhasePoint& p : c.points) {
      k_lo = std::min(k_lo, p.k);
      k_hi = std::max(k_hi, p.k);
    }
  }
  if (k_lo > k_hi) k_lo = k_hi = 0;
  double x_min = static_cast<double>(k_lo);
  double x_max = static_cast<double>(k_hi);
  if (x_max - x_min < 1.0) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  auto px = [&](double k) { return kLeft + (k - x_min) / (x_max - x_min) * (kRight - kLeft); };
  auto py = [&](double rate) { return kBottom - rate * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt((kLeft + kRight) / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(options.title) << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double rate = 0.2 * i;
    const std::string y = fmt(py(rate));
    svg << "<line class=\"grid\" data-rate=\"" << fmt(rate) << "\" x1=\"" << fmt(kLeft)
        << "\" y1=\"" << y << "\" x2=\"" << fmt(kRight) << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(rate) + 4)
        << "\" text-anchor=\"end\">" << fmt(rate) << "</text>\n";
  }
  const std::size_t span = k_hi - k_lo;
  const std::size_t step = span <= 25 ? 1 : (span <= 60 ? 5 : 10);
  for (std::size_t k = k_lo; k <= k_hi; k += step) {
    const std::string x = fmt(px(static_cast<double>(k)));
    svg << "<line x1=\"" << x << "\" y1=\"" << fmt(kBottom) << "\" x2=\"" << x
        << "\" y2=\"" << fmt(kBottom + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << fmt(kBottom + 20)
        << "\" text-anchor=\"middle\">" << k << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(kRight - kLeft) << "\" height=\"" << fmt(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << fmt((kLeft + kRight) / 2) << "\" y=\"" << fmt(kBottom + 45)
      << "\" text-anchor=\"middle\">sparsity k</text>\n"
      << "<text transform=\"translate(22," << fmt((kTop + kBottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">recovery rate</text>\n";

  if (options.bound) {
    // One line per distinct limit, coloured like the first curve reaching it.
    std::map<std::size_t, std::size_t> limits;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      limits.emplace(generic_recovery_limit(curves[i].m, curves[i].r), i);
    }
    for (const auto& [limit, idx] : limits) {
      const double k = static_cast<double>(limit);
      if (k < x_min || k > x_max) continue;
      const std::string x = fmt(px(k));
      svg << "<line class=\"bound\" data-k=\"" << limit << "\" x1=\"" << x
          << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << x << "\" y2=\"" << fmt(kBottom)
          << "\" stroke=\"" << kPalette[idx % kPalette.size()]
          << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const PhaseCurve& c = curves[i];
    const char* color = kPalette[i % kPalette.size()];
    svg << "<polyline class=\"curve\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < c.points.size(); ++j) {
      if (j > 0) svg << ' ';
      svg << fmt(px(static_cast<double>(c.points[j].k))) << ','
          << fmt(py(c.points[j].rate));
    }
    svg << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    svg << "<line x1=\"" << fmt(kRight + 15) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(kRight + 40) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(kRight + 46) << "\" y=\"" << fmt(ly + 4) << "\">"
        << escape(c.algorithm) << " r=" << c.r << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace combo
