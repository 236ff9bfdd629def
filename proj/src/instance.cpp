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

#include "combo/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "combo/errors.hpp"

namespace combo {
namespace {

using nlohmann::json;

json flatten_row_major(const RealMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

RealMatrix unflatten_row_major(const json& values, Index rows, Index cols,
                               const char* name) {
  if (!values.is_array() || static_cast<Index>(values.size()) != rows * cols) {
    throw ParseError(std::string("instance: '") + name +
                         "' must be an array of rows * cols numbers",
                     0);
  }
  RealMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      out(i, j) = values.at(static_cast<std::size_t>(i * cols + j)).get<double>();
    }
  }
  return out;
}

}  // namespace

MmvInstance gen_instance(Index m, Index n, std::size_t k, Index r,
                         RngStream& rng) {
  if (m < 1 || n < 1 || r < 1) {
    throw DimensionError("gen_instance: m, n, r must be >= 1");
  }
  if (k > static_cast<std::size_t>(std::min(m, n))) {
    throw DimensionError("gen_instance: k must not exceed min(m, n)");
  }
  MmvInstance inst;
  inst.seed = rng.stream_id();
  inst.k = k;
  inst.a = random_gaussian(m, n, rng);
  for (Index j = 0; j < n; ++j) inst.a.col(j) /= inst.a.col(j).norm();

  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + rng.uniform_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  inst.support.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(inst.support.begin(), inst.support.end());

  inst.x = RealMatrix::Zero(n, r);
  for (const Index row : inst.support) {
    for (Index j = 0; j < r; ++j) inst.x(row, j) = rng.normal();
  }
  inst.y = inst.a * inst.x;
  return inst;
}

std::string instance_to_json(const MmvInstance& inst) {
  json doc;
  doc["m"] = inst.m();
  doc["n"] = inst.n();
  doc["r"] = inst.r();
  doc["k"] = inst.k;
  doc["seed"] = inst.seed;
  doc["A"] = flatten_row_major(inst.a);
  doc["X"] = flatten_row_major(inst.x);
  doc["support"] = inst.support;
  // nlohmann emits the shortest representation that parses back to the
  // same double, so the round trip is bit-exact.
  return doc.dump(1) + "\n";
}

MmvInstance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what(), 0);
  }
  try {
    MmvInstance inst;
    const Index m = doc.at("m").get<Index>();
    const Index n = doc.at("n").get<Index>();
    const Index r = doc.at("r").get<Index>();
    if (m < 1 || n < 1 || r < 1) {
      throw ParseError("instance: m, n, r must be >= 1", 0);
    }
    inst.k = doc.at("k").get<std::size_t>();
    inst.seed = doc.at("seed").get<std::uint64_t>();
    inst.a = unflatten_row_major(doc.at("A"), m, n, "A");
    inst.x = unflatten_row_major(doc.at("X"), n, r, "X");
    inst.support = doc.at("support").get<IndexSet>();
    inst.y = inst.a * inst.x;
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what(), 0);
  }
}

void write_instance(const MmvInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << instance_to_json(inst);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

MmvInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace combo
