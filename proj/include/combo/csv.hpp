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

#ifndef COMBO_CSV_HPP_
#define COMBO_CSV_HPP_

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "combo/sweep.hpp"

namespace combo {

inline constexpr std::string_view kRecordsHeader =
    "algorithm,m,n,r,k,trial,success,runtime_ms,boosts_used";
inline constexpr std::string_view kCurvesHeader =
    "algorithm,m,n,r,k,trials,successes,rate,bound_k";

// Stream forms; `source` names the input in parse errors.
void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out);
std::vector<TrialRecord> read_records_csv(std::istream& in,
                                          std::string_view source = "<stream>");
void write_curves_csv(const std::vector<PhaseCurve>& curves, std::ostream& out);
std::vector<PhaseCurve> read_curves_csv(std::istream& in,
                                        std::string_view source = "<stream>");

// File forms. I/O failures throw IoError naming the path.
void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::filesystem::path& path);
std::vector<TrialRecord> read_records_csv(const std::filesystem::path& path);
void write_curves_csv(const std::vector<PhaseCurve>& curves,
                      const std::filesystem::path& path);
std::vector<PhaseCurve> read_curves_csv(const std::filesystem::path& path);

enum class CsvKind { kRecords, kCurves, kUnknown };
// Classifies a file by its header row.
CsvKind detect_csv_kind(const std::filesystem::path& path);

}  // namespace combo

#endif  // COMBO_CSV_HPP_
