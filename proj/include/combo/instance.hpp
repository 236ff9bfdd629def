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

#ifndef COMBO_INSTANCE_HPP_
#define COMBO_INSTANCE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "combo/linalg.hpp"
#include "combo/mmv.hpp"
#include "combo/rng.hpp"

namespace combo {

// A planted joint-sparse problem: A with unit-norm columns, X with exactly
// k nonzero rows, Y = A X.
struct MmvInstance {
  RealMatrix a;
  RealMatrix x;
  RealMatrix y;
  std::size_t k = 0;
  IndexSet support;
  std::uint64_t seed = 0;  // stream id the instance was drawn from

  Index m() const { return a.rows(); }
  Index n() const { return a.cols(); }
  Index r() const { return x.cols(); }
  MmvProblem problem() const { return {a, y}; }
};

// Gaussian A normalised column-wise, support uniform without replacement,
// nonzero entries of X standard normal. Draw order: A, support, X.
MmvInstance gen_instance(Index m, Index n, std::size_t k, Index r,
                         RngStream& rng);

// JSON interchange: {m, n, r, k, seed, A, X, support} with matrices
// flattened row-major. Y is recomputed as A X on load.
std::string instance_to_json(const MmvInstance& inst);
MmvInstance instance_from_json(const std::string& text);

void write_instance(const MmvInstance& inst, const std::filesystem::path& path);
MmvInstance read_instance(const std::filesystem::path& path);

}  // namespace combo

#endif  // COMBO_INSTANCE_HPP_
