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

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "combo/bounds.hpp"
#include "combo/csv.hpp"
#include "combo/errors.hpp"
#include "combo/instance.hpp"
#include "combo/svg.hpp"
#include "combo/sweep.hpp"

using namespace combo;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("combo_test_bench_" + name);
}

bool bitwise_equal(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.size(); ++i) {
    if (std::memcmp(a.data() + i, b.data() + i, sizeof(double)) != 0) return false;
  }
  return true;
}

std::vector<double> polyline_ys(const std::string& svg) {
  std::vector<double> ys;
  const std::regex points("class=\"curve\"[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, points)) return ys;
  std::istringstream in(m[1].str());
  std::string pair;
  while (in >> pair) ys.push_back(std::stod(pair.substr(pair.find(',') + 1)));
  return ys;
}

double attribute_of(const std::string& svg, const std::string& tag_regex,
                    const std::string& attr) {
  const std::regex tag(tag_regex);
  std::smatch m;
  if (!std::regex_search(svg, m, tag)) return -1.0;
  const std::regex value(attr + "=\"([^\"]*)\"");
  std::smatch v;
  const std::string whole = m[0].str();
  if (!std::regex_search(whole, v, value)) return -1.0;
  return std::stod(v[1].str());
}

}  // namespace

TEST_CASE("gen_instance contract") {
  RngStream rng(5, 0);
  const MmvInstance empty = gen_instance(20, 30, 0, 4, rng);
  CHECK(empty.x.isZero(0.0));
  CHECK(empty.y.isZero(0.0));
  CHECK(empty.support.empty());

  RngStream a(42, 7), b(42, 7);
  const MmvInstance first = gen_instance(20, 30, 6, 3, a);
  const MmvInstance second = gen_instance(20, 30, 6, 3, b);
  CHECK(bitwise_equal(first.a, second.a));
  CHECK(bitwise_equal(first.x, second.x));
  CHECK(bitwise_equal(first.y, second.y));
  CHECK(first.support == second.support);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream s(seed, 3);
    const std::size_t k = 1 + seed % 20;
    const Index r = 1 + static_cast<Index>(seed % 16);
    const MmvInstance inst = gen_instance(20, 30, k, r, s);
    CHECK(numerical_rank(inst.y) == std::min<Index>(static_cast<Index>(k), r));
    CHECK((inst.a.colwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(inst.support.size() == k);
    CHECK(std::is_sorted(inst.support.begin(), inst.support.end()));
    CHECK(nonzero_rows(inst.x, 0.0) == inst.support);
    CHECK((inst.y - inst.a * inst.x).norm() <= 1e-12 * std::max(1.0, inst.y.norm()));
  }

  CHECK_THROWS_AS(gen_instance(5, 10, 6, 2, rng), DimensionError);
  CHECK_THROWS_AS(gen_instance(5, 4, 5, 2, rng), DimensionError);
}

TEST_CASE("instance JSON round trip is bit exact") {
  RngStream rng(9, 0);
  MmvInstance inst = gen_instance(7, 11, 3, 2, rng);
  inst.seed = 0xdeadbeefcafef00dULL;
  const MmvInstance back = instance_from_json(instance_to_json(inst));
  CHECK(bitwise_equal(inst.a, back.a));
  CHECK(bitwise_equal(inst.x, back.x));
  CHECK(bitwise_equal(inst.y, back.y));
  CHECK(back.support == inst.support);
  CHECK(back.k == inst.k);
  CHECK(back.seed == inst.seed);

  const fs::path path = temp_path("instance.json");
  write_instance(inst, path);
  CHECK(bitwise_equal(read_instance(path).x, inst.x));
  fs::remove(path);

  CHECK_THROWS_AS(instance_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(instance_from_json("{\"m\": 2}"), ParseError);
  CHECK_THROWS_AS(read_instance(temp_path("missing.json")), IoError);
}

TEST_CASE("algorithm names") {
  for (const Algorithm a : {Algorithm::kSomp, Algorithm::kRembo, Algorithm::kNaiveConcat,
                            Algorithm::kCombo}) {
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
  CHECK_FALSE(parse_algorithm("mfocuss").has_value());
}

TEST_CASE("sweep cardinality and ordering") {
  SweepConfig cfg;
  cfg.trials = 1;
  cfg.algorithms = {Algorithm::kSomp};
  cfg.r_list = {1};
  cfg.k_min = cfg.k_max = 1;
  CHECK(run_sweep(cfg).size() == 1);

  cfg.trials = 3;
  cfg.algorithms = {Algorithm::kCombo, Algorithm::kSomp};
  cfg.r_list = {4, 2};
  cfg.k_min = 2;
  cfg.k_max = 4;
  const auto records = run_sweep(cfg);
  CHECK(records.size() == 2 * 2 * 3 * 3);
  CHECK(std::is_sorted(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.algorithm, x.r, x.k, x.trial) < std::tie(y.algorithm, y.r, y.k, y.trial);
  }));
  for (const TrialRecord& rec : records) {
    CHECK(rec.runtime_ms == 0.0);
    CHECK(rec.m == 20);
    CHECK(rec.n == 30);
  }
}

TEST_CASE("sweep is independent of worker count") {
  SweepConfig cfg;
  cfg.trials = 4;
  cfg.r_list = {1, 3};
  cfg.k_min = 3;
  cfg.k_max = 6;
  cfg.master_seed = 77;
  cfg.worker_count = 1;
  const auto serial = run_sweep(cfg);
  cfg.worker_count = 8;
  const auto parallel = run_sweep(cfg);
  CHECK(serial == parallel);

  std::ostringstream a, b;
  write_records_csv(serial, a);
  write_records_csv(parallel, b);
  CHECK(a.str() == b.str());

  cfg.master_seed = 78;
  CHECK(run_sweep(cfg) != serial);
}

TEST_CASE("instances are shared across algorithms within a cell") {
  const std::uint64_t id = trial_stream_id(1, 4, 7, 3);
  CHECK(id == trial_stream_id(1, 4, 7, 3));
  std::set<std::uint64_t> ids;
  for (std::size_t r = 1; r <= 4; ++r) {
    for (std::size_t k = 1; k <= 5; ++k) {
      for (std::size_t t = 0; t < 5; ++t) ids.insert(trial_stream_id(1, r, k, t));
    }
  }
  CHECK(ids.size() == 100);

  // Two algorithms that are deterministic on a given instance must agree
  // trial by trial when run through the harness with the same seed.
  SweepConfig cfg;
  cfg.trials = 5;
  cfg.r_list = {1};
  cfg.k_min = 4;
  cfg.k_max = 6;
  cfg.algorithms = {Algorithm::kNaiveConcat, Algorithm::kCombo};
  const auto records = run_sweep(cfg);
  const std::size_t half = records.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    CHECK(records[i].success == records[half + i].success);
  }
}

TEST_CASE("combo deep inside the success region") {
  SweepConfig cfg;
  cfg.trials = 50;
  cfg.r_list = {16};
  cfg.k_min = cfg.k_max = 4;
  cfg.algorithms = {Algorithm::kCombo};
  const auto curves = aggregate(run_sweep(cfg));
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].points[0].rate >= 0.98);
}

TEST_CASE("aggregate") {
  CHECK(aggregate({}).empty());

  std::vector<TrialRecord> records;
  for (std::size_t k = 1; k <= 12; ++k) {
    for (std::size_t t = 0; t < 3; ++t) {
      records.push_back({"combo", 20, 30, 1, k, t, true, 0.0, 5});
    }
  }
  records.push_back({"somp", 20, 30, 8, 2, 0, false, 0.0, 1});
  records.push_back({"somp", 20, 30, 8, 2, 1, true, 0.0, 1});
  const auto curves = aggregate(records);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].algorithm == "combo");
  REQUIRE(curves[0].points.size() == 12);
  for (const PhasePoint& p : curves[0].points) {
    CHECK(p.rate == 1.0);
    CHECK(p.trials == 3);
    CHECK(p.bound_k == 10);
  }
  CHECK(mean_rate(curves[0]) == 1.0);
  CHECK(curves[1].points[0].rate == 0.5);
  CHECK(curves[1].points[0].bound_k == deterministic_bound(21, 2));
}

TEST_CASE("records CSV") {
  std::vector<TrialRecord> records = {
      {"combo", 20, 30, 8, 12, 0, true, 0.0, 5},
      {"rembo", 20, 30, 8, 12, 1, false, 3.14159265358979, 20},
      {"somp", 5, 9, 1, 2, 99, true, 1e-300, 0},
  };
  std::ostringstream out;
  write_records_csv(records, out);
  std::istringstream in(out.str());
  CHECK(read_records_csv(in) == records);

  const fs::path path = temp_path("records.csv");
  write_records_csv(records, path);
  CHECK(read_records_csv(path) == records);
  CHECK(detect_csv_kind(path) == CsvKind::kRecords);

  write_records_csv(std::vector<TrialRecord>{}, path);
  {
    std::ifstream f(path);
    std::stringstream whole;
    whole << f.rdbuf();
    CHECK(whole.str() == std::string(kRecordsHeader) + "\n");
  }
  CHECK(read_records_csv(path).empty());
  fs::remove(path);

  std::istringstream bad(std::string(kRecordsHeader) +
                         "\ncombo,20,30,8,12,0,1,0,5\ncombo,20,30,x,12,0,1,0,5\n");
  try {
    read_records_csv(bad, "bad.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
  }
  std::istringstream short_row(std::string(kRecordsHeader) + "\ncombo,20\n");
  CHECK_THROWS_AS(read_records_csv(short_row), ParseError);
  std::istringstream no_header("combo,20,30,8,12,0,1,0,5\n");
  CHECK_THROWS_AS(read_records_csv(no_header), ParseError);

  CHECK_THROWS_AS(read_records_csv(temp_path("does_not_exist.csv")), IoError);
  CHECK_THROWS_AS(write_records_csv(records, fs::path("/nonexistent_dir/x.csv")), IoError);
}

TEST_CASE("curves CSV") {
  std::vector<TrialRecord> records;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t t = 0; t < 3; ++t) {
      records.push_back({"rembo", 20, 30, 2, k, t, t < k % 3, 0.0, 1});
    }
  }
  const auto curves = aggregate(records);
  std::ostringstream out;
  write_curves_csv(curves, out);
  std::istringstream in(out.str());
  CHECK(read_curves_csv(in) == curves);

  const fs::path path = temp_path("curves.csv");
  write_curves_csv(curves, path);
  CHECK(detect_csv_kind(path) == CsvKind::kCurves);
  CHECK(read_curves_csv(path) == curves);
  fs::remove(path);
}

TEST_CASE("svg rendering") {
  CHECK_THROWS_AS(render_svg({}), std::invalid_argument);

  PhaseCurve flat{"combo", 20, 30, 1, {}};
  for (std::size_t k = 1; k <= 20; ++k) flat.points.push_back({k, 10, 10, 1.0, 10});
  const std::string plain = render_svg({flat});
  const std::vector<double> ys = polyline_ys(plain);
  REQUIRE(ys.size() == 20);
  const double top = attribute_of(plain, "<line class=\"grid\" data-rate=\"1.00\"[^>]*>", "y1");
  for (const double y : ys) CHECK(y == top);
  CHECK(plain.find("class=\"bound\"") == std::string::npos);
  CHECK(plain.rfind("</svg>\n") == plain.size() - 7);

  SvgOptions opts;
  opts.bound = true;
  opts.title = "a < b & c";
  const std::string with_bound = render_svg({flat}, opts);
  CHECK(with_bound.find("data-k=\"10\"") != std::string::npos);
  CHECK(with_bound.find("stroke-dasharray") != std::string::npos);
  CHECK(with_bound.find("a &lt; b &amp; c") != std::string::npos);
  // x of the dashed line sits where the k = 10 point of the curve is drawn.
  const double bound_x = attribute_of(with_bound, "<line class=\"bound\"[^>]*>", "x1");
  const std::regex tenth("points=\"(?:[^ ]+ ){9}([0-9.]+),");
  std::smatch m;
  REQUIRE(std::regex_search(with_bound, m, tenth));
  CHECK(bound_x == std::stod(m[1].str()));

  std::vector<PhaseCurve> four;
  for (const std::size_t r : {1, 2, 8, 16}) {
    PhaseCurve c = flat;
    c.r = r;
    four.push_back(c);
  }
  const std::string many = render_svg(four, opts);
  std::size_t polylines = 0, bounds = 0;
  for (std::size_t pos = 0; (pos = many.find("class=\"curve\"", pos)) != std::string::npos; ++pos) ++polylines;
  for (std::size_t pos = 0; (pos = many.find("class=\"bound\"", pos)) != std::string::npos; ++pos) ++bounds;
  CHECK(polylines == 4);
  CHECK(bounds == 4);
}
