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

#include "ergo/trace.hpp"

#include <algorithm>

#include "json.hpp"

namespace ergo {

namespace {

// Quotes a CSV cell when it holds a separator or quote.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<bool> numeric_columns(const RunTrace& t) {
  std::vector<bool> numeric(t.columns.size(), false);
  for (const auto& row : t.records)
    for (std::size_t i = 0; i < row.size() && i < numeric.size(); ++i)
      if (row[i].numeric()) numeric[i] = true;
  return numeric;
}

std::string header_lines(const RunTrace& t) {
  std::string out = version_line(t) + "\n";
  for (const auto& [k, v] : t.header) out += "# " + k + ": " + v + "\n";
  return out;
}

}  // namespace

TraceValue TraceValue::of(const Scalar& s, int digits) {
  return {to_exact_string(s), report_decimal(s, digits)};
}

TraceValue TraceValue::of(long long n) {
  const std::string s = std::to_string(n);
  return {s, s};
}

TraceValue TraceValue::text(std::string s) { return {std::move(s), ""}; }

void RunTrace::add_header(std::string key, std::string value) {
  header.emplace_back(std::move(key), std::move(value));
}

void RunTrace::add_summary(std::string key, TraceValue value) {
  summary.emplace_back(std::move(key), std::move(value));
}

void RunTrace::fail(int code) { exit_code = std::max(exit_code, code); }

const TraceValue* RunTrace::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return &v;
  return nullptr;
}

std::string version_line(const RunTrace& trace) {
  std::string version = ERGO_VERSION;
  std::string hash = "none";
  for (const auto& [k, v] : trace.header) {
    if (k == "config_hash") hash = v;
  }
  return "# ergo " + version + " config_hash " + hash;
}

std::string to_csv(const RunTrace& t) {
  std::string out = header_lines(t);
  const auto numeric = numeric_columns(t);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    names.push_back(t.columns[i]);
    if (numeric[i]) names.push_back(t.columns[i] + "_decimal");
  }
  if (!names.empty()) {
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + csv_cell(names[i]);
    out += "\n";
  }
  for (const auto& row : t.records) {
    std::string line;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const TraceValue v = i < row.size() ? row[i] : TraceValue{};
      line += (i ? "," : "") + csv_cell(v.exact);
      if (numeric[i]) line += "," + csv_cell(v.decimal);
    }
    out += line + "\n";
  }
  for (const auto& [k, v] : t.summary) {
    out += "# summary " + k + ": " + v.exact;
    if (v.numeric() && v.decimal != v.exact) out += " (" + v.decimal + ")";
    out += "\n";
  }
  out += "# exit_code: " + std::to_string(t.exit_code) + "\n";
  return out;
}

std::string to_structured(const RunTrace& t) {
  using nlohmann::ordered_json;
  auto cell = [](const TraceValue& v) {
    ordered_json c = {{"exact", v.exact}};
    if (v.numeric()) c["decimal"] = v.decimal;
    return c;
  };
  ordered_json j;
  j["version_line"] = version_line(t);
  ordered_json header = ordered_json::object();
  for (const auto& [k, v] : t.header) header[k] = v;
  j["header"] = header;
  j["columns"] = t.columns;
  ordered_json records = ordered_json::array();
  for (const auto& row : t.records) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = cell(row[i]);
    records.push_back(std::move(r));
  }
  j["records"] = records;
  ordered_json summary = ordered_json::object();
  for (const auto& [k, v] : t.summary) summary[k] = cell(v);
  j["summary"] = summary;
  j["exit_code"] = t.exit_code;
  return j.dump(2) + "\n";
}

PlotFiles emit_plot_data(const RunTrace& t) {
  const auto numeric = numeric_columns(t);
  PlotFiles out;
  out.data = version_line(t) + "\n";
  out.exact_sidecar = version_line(t) + "\n";
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (numeric[i]) keep.push_back(i);
  if (keep.empty()) return out;
  std::string names;
  for (std::size_t k = 0; k < keep.size(); ++k) names += (k ? "," : "") + csv_cell(t.columns[keep[k]]);
  out.data += names + "\n";
  out.exact_sidecar += names + "\n";
  for (const auto& row : t.records) {
    std::string d, e;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const std::size_t i = keep[k];
      const TraceValue v = i < row.size() ? row[i] : TraceValue{};
      // Plot columns are plain numbers; drop the approximation marker.
      std::string dec = v.decimal;
      if (!dec.empty() && dec.front() == '~') dec.erase(0, 1);
      d += (k ? "," : "") + dec;
      e += (k ? "," : "") + csv_cell(v.exact);
    }
    out.data += d + "\n";
    out.exact_sidecar += e + "\n";
  }
  return out;
}

}  // namespace ergo
