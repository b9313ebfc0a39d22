// Copyright 2026 The slicekit Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "slicekit/domain.hpp"

namespace slicekit {

class EmptyInput : public Error {
 public:
  using Error::Error;
};

namespace violation {

struct CapacityExceeded {
  std::string slice_id;
  std::int64_t used;
  std::int64_t capacity;
};
struct LatencyMismatch {
  std::string request_id;
  std::string slice_id;
  double request_latency_ms;
  double slice_latency_ms;
};
struct Unassigned {
  std::string request_id;
};
struct UnknownSlice {
  std::string slice_id;
  std::string request_id;  // row that referenced it
};
struct UnknownRequest {
  std::string request_id;
};
struct UnitsMismatch {
  std::string request_id;
  std::int64_t allocated;
  std::int64_t demand;
};
struct DuplicateAssignment {
  std::string request_id;
};

}  // namespace violation

using Violation =
    std::variant<violation::CapacityExceeded, violation::LatencyMismatch,
                 violation::Unassigned, violation::UnknownSlice,
                 violation::UnknownRequest, violation::UnitsMismatch,
                 violation::DuplicateAssignment>;

std::string describe(const Violation& v);
nlohmann::json violation_to_json(const Violation& v);

struct ViolationReport {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  std::size_t size() const { return violations.size(); }

  template <typename T>
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& v : violations) n += std::holds_alternative<T>(v);
    return n;
  }
};

nlohmann::json violation_report_to_json(const ViolationReport& report);

// Checks every row against the scenario. Capacity is charged with the
// allocated units as written. Violations are data, never thrown.
// Order: per-row findings in row order, then capacity per slice, then
// unassigned requests in scenario order.
ViolationReport validate(const Scenario& scenario,
                         const Assignment& assignment);

// 100 * (distinct scenario requests assigned) / N; 100 when N = 0.
double completeness(const Scenario& scenario, const Assignment& assignment);

// Entropy-based homogeneity 1 - H(C|K) / H(C), with C the archetypes of the
// assigned requests and K their slice ids (natural log). Rows naming unknown
// requests are skipped. 1 when H(C) = 0. Throws EmptyInput when no row
// names a scenario request.
double homogeneity(const Scenario& scenario, const Assignment& assignment);

struct SliceUtilization {
  std::string slice_id;
  double bandwidth = 0;  // assigned units / capacity
  double density = 0;    // assigned rows / connection capacity
};

// One entry per scenario slice, in slice order. Not clamped: overfull slices
// report values above 1. A zero-capacity slice reports 0 when empty and
// +infinity when anything is placed on it.
std::vector<SliceUtilization> utilizations(const Scenario& scenario,
                                           const Assignment& assignment);

struct MetricsReport {
  double completeness_pct = 0;
  // Absent when the assignment names no scenario request.
  std::optional<double> homogeneity;
  std::vector<SliceUtilization> utilization;
  std::int64_t violation_count = 0;
};

MetricsReport compute_metrics(const Scenario& scenario,
                              const Assignment& assignment);

nlohmann::json metrics_to_json(const MetricsReport& m);
MetricsReport metrics_from_json(const nlohmann::json& j);

struct Summary {
  double mean = 0;
  double std = 0;  // sample standard deviation (n - 1); 0 for one value
  std::size_t count = 0;
};

// Throws EmptyInput for an empty list.
Summary summarize(const std::vector<double>& values);

struct SliceSummary {
  std::string slice_id;
  Summary bandwidth;
  Summary density;
};

struct AggregateReport {
  std::size_t runs = 0;
  Summary completeness_pct;
  Summary homogeneity;  // over runs that have a homogeneity value
  Summary violation_count;
  std::vector<SliceSummary> utilization;
};

// Per-metric mean and sample std. Slices are matched by id in first-seen
// order. Throws EmptyInput.
AggregateReport aggregate(const std::vector<MetricsReport>& runs);

nlohmann::json aggregate_to_json(const AggregateReport& a);

// CSV helpers shared by the CLI. Numbers use fixed 6-decimal formatting so
// files are byte-stable.
std::string format_fixed(double v, int decimals = 6);
std::string metrics_csv_header(const std::vector<std::string>& slice_ids);
std::string metrics_csv_row(const std::string& method, const std::string& run,
                            const MetricsReport& m);
// "mean" and "std" rows for the same columns; violation_count is real-valued
// here.
std::string aggregate_csv_rows(const std::string& method,
                               const AggregateReport& a);

}  // namespace slicekit
