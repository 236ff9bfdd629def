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

#include "combo/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "combo/errors.hpp"

namespace combo {
namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

class RowParser {
 public:
  RowParser(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(std::string(source_) + ":" + std::to_string(line_) + ": " + msg,
                     line_);
  }

  std::size_t count(std::string_view field, const char* name) const {
    std::size_t value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc() ||
        res.ptr != field.data() + field.size()) {
      fail(std::string("bad ") + name + " '" + std::string(field) + "'");
    }
    return value;
  }

  double real(std::string_view field, const char* name) const {
    double value = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc() ||
        res.ptr != field.data() + field.size()) {
      fail(std::string("bad ") + name + " '" + std::string(field) + "'");
    }
    return value;
  }

  bool flag(std::string_view field, const char* name) const {
    if (field == "1") return true;
    if (field == "0") return false;
    fail(std::string("bad ") + name + " '" + std::string(field) + "' (want 0 or 1)");
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

// Reads the header and hands every following non-empty line to `row`.
template <typename Row>
void read_rows(std::istream& in, std::string_view source, std::string_view header,
               std::size_t fields, Row&& row) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(std::string(source) + ":1: missing header", 1);
  }
  ++line_no;
  if (line != header) {
    throw ParseError(std::string(source) + ":1: unexpected header '" + line + "'", 1);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const RowParser parser(source, line_no);
    const auto cols = split_fields(line);
    if (cols.size() != fields) {
      parser.fail("expected " + std::to_string(fields) + " fields, got " +
                  std::to_string(cols.size()));
    }
    row(parser, cols);
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << kRecordsHeader << '\n';
  for (const TrialRecord& rec : records) {
    out << rec.algorithm << ',' << rec.m << ',' << rec.n << ',' << rec.r << ','
        << rec.k << ',' << rec.trial << ',' << (rec.success ? 1 : 0) << ','
        << format_double(rec.runtime_ms) << ',' << rec.boosts_used << '\n';
  }
}

std::vector<TrialRecord> read_records_csv(std::istream& in, std::string_view source) {
  std::vector<TrialRecord> out;
  read_rows(in, source, kRecordsHeader, 9, [&](const RowParser& p, const auto& c) {
    TrialRecord rec;
    if (c[0].empty()) p.fail("empty algorithm");
    rec.algorithm = std::string(c[0]);
    rec.m = p.count(c[1], "m");
    rec.n = p.count(c[2], "n");
    rec.r = p.count(c[3], "r");
    rec.k = p.count(c[4], "k");
    rec.trial = p.count(c[5], "trial");
    rec.success = p.flag(c[6], "success");
    rec.runtime_ms = p.real(c[7], "runtime_ms");
    rec.boosts_used = p.count(c[8], "boosts_used");
    out.push_back(std::move(rec));
  });
  return out;
}

void write_curves_csv(const std::vector<PhaseCurve>& curves, std::ostream& out) {
  out << kCurvesHeader << '\n';
  for (const PhaseCurve& curve : curves) {
    for (const PhasePoint& pt : curve.points) {
      out << curve.algorithm << ',' << curve.m << ',' << curve.n << ',' << curve.r
          << ',' << pt.k << ',' << pt.trials << ',' << pt.successes << ','
          << format_double(pt.rate) << ',' << pt.bound_k << '\n';
    }
  }
}

std::vector<PhaseCurve> read_curves_csv(std::istream& in, std::string_view source) {
  std::vector<PhaseCurve> out;
  read_rows(in, source, kCurvesHeader, 9, [&](const RowParser& p, const auto& c) {
    if (c[0].empty()) p.fail("empty algorithm");
    const std::string algorithm(c[0]);
    const std::size_t m = p.count(c[1], "m");
    const std::size_t n = p.count(c[2], "n");
    const std::size_t r = p.count(c[3], "r");
    PhasePoint pt;
    pt.k = p.count(c[4], "k");
    pt.trials = p.count(c[5], "trials");
    pt.successes = p.count(c[6], "successes");
    pt.rate = p.real(c[7], "rate");
    pt.bound_k = p.count(c[8], "bound_k");
    if (pt.successes > pt.trials || pt.rate < 0.0 || pt.rate > 1.0) {
      p.fail("inconsistent success counts");
    }
    // Consecutive rows with the same key extend the current curve.
    if (out.empty() || out.back().algorithm != algorithm || out.back().m != m ||
        out.back().n != n || out.back().r != r) {
      out.push_back(PhaseCurve{algorithm, m, n, r, {}});
    }
    out.back().points.push_back(pt);
  });
  return out;
}

void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  write_records_csv(records, out);
  finish(out, path);
}

std::vector<TrialRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_records_csv(in, path.string());
}

void write_curves_csv(const std::vector<PhaseCurve>& curves,
                      const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  write_curves_csv(curves, out);
  finish(out, path);
}

std::vector<PhaseCurve> read_curves_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_curves_csv(in, path.string());
}

CsvKind detect_csv_kind(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string header;
  std::getline(in, header);
  if (header == kRecordsHeader) return CsvKind::kRecords;
  if (header == kCurvesHeader) return CsvKind::kCurves;
  return CsvKind::kUnknown;
}

}  // namespace combo
