// Copyright 2026 The ergo Authors
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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ergo/scalar.hpp"

namespace ergo {

inline constexpr int kDecimalDigits = 12;

/// A cell of a trace: the exact text plus, for numbers, a decimal rendering.
struct TraceValue {
  std::string exact;
  std::string decimal;  // empty for non-numeric cells

  static TraceValue of(const Scalar& s, int digits = kDecimalDigits);
  static TraceValue of(long long n);
  static TraceValue text(std::string s);
  [[nodiscard]] bool numeric() const { return !decimal.empty(); }
  friend bool operator==(const TraceValue&, const TraceValue&) = default;
};

/// Process exit codes of a run.
enum ExitCode : int { kExitPass = 0, kExitAssertion = 1, kExitBudget = 2, kExitConfig = 3 };

struct RunTrace {
  /// Ordered header fields: version, config hash, fixture, command, notices.
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<TraceValue>> records;
  std::vector<std::pair<std::string, TraceValue>> summary;
  int exit_code = kExitPass;

  void add_header(std::string key, std::string value);
  void add_summary(std::string key, TraceValue value);
  /// Keeps the higher of the current exit code and `code`.
  void fail(int code);
  [[nodiscard]] const TraceValue* summary_value(const std::string& key) const;
};

/// First line of every output file.
std::string version_line(const RunTrace& trace);

/// Columnar text. Header and summary lines start with '#'; numeric columns
/// appear twice, exact and "<name>_decimal".
std::string to_csv(const RunTrace& trace);
/// JSON object with header, columns, records ({exact, decimal} per cell)
/// and summary.
std::string to_structured(const RunTrace& trace);

/// Plot data: the decimal renderings only (non-numeric columns dropped),
/// plus a sidecar carrying the exact strings of the same cells.
struct PlotFiles {
  std::string data;
  std::string exact_sidecar;
};
PlotFiles emit_plot_data(const RunTrace& trace);

}  // namespace ergo
