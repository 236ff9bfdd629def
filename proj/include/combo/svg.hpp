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

#ifndef COMBO_SVG_HPP_
#define COMBO_SVG_HPP_

#include <string>
#include <vector>

#include "combo/sweep.hpp"

namespace combo {

struct SvgOptions {
  bool bound = false;  // dashed vertical line at each curve's recovery limit
  std::string title = "Recovery rate";
};

// Recovery rate (0..1) against k, one polyline per curve, 800x600 viewport.
// Throws std::invalid_argument when `curves` is empty.
std::string render_svg(const std::vector<PhaseCurve>& curves,
                       const SvgOptions& options = {});

}  // namespace combo

#endif  // COMBO_SVG_HPP_
