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

#ifndef COMBO_RNG_HPP_
#define COMBO_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "combo/linalg.hpp"

namespace combo {

// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

// Folds a list of integers into a single stream id.
std::uint64_t derive_stream_id(std::uint64_t master_seed,
                               std::initializer_list<std::uint64_t> keys);

// Reproducible random stream. The same (master_seed, stream_id) pair yields
// the same sequence on every platform: the engine is mt19937_64 and all
// transforms on top of it are implemented here rather than delegated to
// the implementation-defined <random> distributions.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// i.i.d. standard normal entries, filled column by column.
RealMatrix random_gaussian(Index rows, Index cols, RngStream& rng);

// Haar-distributed r x r orthogonal matrix.
RealMatrix random_orthonormal(Index r, RngStream& rng);

}  // namespace combo

#endif  // COMBO_RNG_HPP_
