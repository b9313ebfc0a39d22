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

#include "slicekit/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "slicekit/scenario.hpp"

namespace slicekit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double plogp_sum(const std::vector<double>& counts, double total) {
  double h = 0;
  for (double c : counts)
    if (c > 0) h -= (c / total) * std::log(c / total);
  return h;
}

double ratio(double num, double den) {
  if (den > 0) return num / den;
  return num > 0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

std::string describe(const Violation& v) {
  using namespace violation;
  return std::visit(Overloaded{
                        [](const CapacityExceeded& x) {
                          return "CapacityExceeded(" + x.slice_id + ", " +
                                 std::to_string(x.used) + ", " +
                                 std::to_string(x.capacity) + ")";
                        },
                        [](const LatencyMismatch& x) {
                          return "LatencyMismatch(" + x.request_id + ", " +
                                 x.slice_id + ", " +
                                 format_fixed(x.request_latency_ms, 1) + ", " +
                                 format_fixed(x.slice_latency_ms, 1) + ")";
                        },
                        [](const Unassigned& x) {
                          return "Unassigned(" + x.request_id + ")";
                        },
                        [](const UnknownSlice& x) {
                          return "UnknownSlice(" + x.slice_id + ")";
                        },
                        [](const UnknownRequest& x) {
                          return "UnknownRequest(" + x.request_id + ")";
                        },
                        [](const UnitsMismatch& x) {
                          return "UnitsMismatch(" + x.request_id + ", " +
                                 std::to_string(x.allocated) + ", " +
                                 std::to_string(x.demand) + ")";
                        },
                        [](const DuplicateAssignment& x) {
                          return "DuplicateAssignment(" + x.request_id + ")";
                        },
                    },
                    v);
}

nlohmann::json violation_to_json(const Violation& v) {
  using namespace violation;
  using nlohmann::json;
  return std::visit(
      Overloaded{
          [](const CapacityExceeded& x) {
            return json{{"type", "CapacityExceeded"},
                        {"slice", x.slice_id},
                        {"used", x.used},
                        {"capacity", x.capacity}};
          },
          [](const LatencyMismatch& x) {
            return json{{"type", "LatencyMismatch"},
                        {"request", x.request_id},
                        {"slice", x.slice_id},
                        {"request_latency_ms", x.request_latency_ms},
                        {"slice_latency_ms", x.slice_latency_ms}};
          },
          [](const Unassigned& x) {
            return json{{"type", "Unassigned"}, {"request", x.request_id}};
          },
          [](const UnknownSlice& x) {
            return json{{"type", "UnknownSlice"},
                        {"slice", x.slice_id},
                        {"request", x.request_id}};
          },
          [](const UnknownRequest& x) {
            return json{{"type", "UnknownRequest"}, {"request", x.request_id}};
          },
          [](const UnitsMismatch& x) {
            return json{{"type", "UnitsMismatch"},
                        {"request", x.request_id},
                        {"allocated", x.allocated},
                        {"demand", x.demand}};
          },
          [](const DuplicateAssignment& x) {
            return json{{"type", "DuplicateAssignment"},
                        {"request", x.request_id}};
          },
      },
      v);
}

nlohmann::json violation_report_to_json(const ViolationReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Violation& v : report.violations)
    arr.push_back(violation_to_json(v));
  return {{"violation_count", report.size()}, {"violations", std::move(arr)}};
}

ViolationReport validate(const Scenario& scenario,
                         const Assignment& assignment) {
  using namespace violation;
  ViolationReport report;
  const auto& slices = scenario.slices();
  const auto& requests = scenario.requests();
  std::vector<std::int64_t> used(slices.size(), 0);
  std::vector<bool> assigned(requests.size(), false);
  std::set<std::string, std::less<>> seen;

  for (const AssignmentRow& row : assignment.rows()) {
    const auto m = scenario.slice_index(row.slice_id);
    const auto i = scenario.request_index(row.request_id);
    if (!seen.insert(row.request_id).second)
      report.violations.push_back(DuplicateAssignment{row.request_id});
    if (!m)
      report.violations.push_back(UnknownSlice{row.slice_id, row.request_id});
    if (!i) report.violations.push_back(UnknownRequest{row.request_id});
    if (m) used[*m] += row.allocated_units;
    if (!i) continue;
    assigned[*i] = true;
    const Request& r = requests[*i];
    if (m &&
        !latency_compatible(slices[*m].latency_guarantee_ms, r.latency_req_ms))
      report.violations.push_back(
          LatencyMismatch{r.id, slices[*m].id, r.latency_req_ms,
                          slices[*m].latency_guarantee_ms});
    if (row.allocated_units != r.demand)
      report.violations.push_back(
          UnitsMismatch{r.id, row.allocated_units, r.demand});
  }
  for (std::size_t m = 0; m < slices.size(); ++m)
    if (used[m] > slices[m].capacity)
      report.violations.push_back(
          CapacityExceeded{slices[m].id, used[m], slices[m].capacity});
  for (std::size_t i = 0; i < requests.size(); ++i)
    if (!assigned[i]) report.violations.push_back(Unassigned{requests[i].id});
  return report;
}

double completeness(const Scenario& scenario, const Assignment& assignment) {
  const std::size_t n = scenario.request_count();
  if (n == 0) return 100.0;
  std::set<std::size_t> hit;
  for (const AssignmentRow& row : assignment.rows())
    if (auto i = scenario.request_index(row.request_id)) hit.insert(*i);
  return 100.0 * static_cast<double>(hit.size()) / static_cast<double>(n);
}

double homogeneity(const Scenario& scenario, const Assignment& assignment) {
  std::vector<double> class_count(kServiceClassCount, 0);
  std::map<std::string, std::vector<double>> by_cluster;
  double total = 0;
  for (const AssignmentRow& row : assignment.rows()) {
    const auto i = scenario.request_index(row.request_id);
    if (!i) continue;
    const auto c = static_cast<std::size_t>(scenario.requests()[*i].archetype);
    auto& cluster = by_cluster[row.slice_id];
    cluster.resize(kServiceClassCount, 0);
    cluster[c] += 1;
    class_count[c] += 1;
    total += 1;
  }
  if (total == 0)
    throw EmptyInput("homogeneity needs at least one assigned request");

  const double h_c = plogp_sum(class_count, total);
  if (h_c <= 0) return 1.0;
  double h_c_given_k = 0;
  for (const auto& [slice, counts] : by_cluster) {
    double size = 0;
    for (double c : counts) size += c;
    h_c_given_k += (size / total) * plogp_sum(counts, size);
  }
  return std::clamp(1.0 - h_c_given_k / h_c, 0.0, 1.0);
}

std::vector<SliceUtilization> utilizations(const Scenario& scenario,
                                           const Assignment& assignment) {
  const auto& slices = scenario.slices();
  std::vector<double> units(slices.size(), 0);
  std::vector<double> rows(slices.size(), 0);
  for (const AssignmentRow& row : assignment.rows())
    if (auto m = scenario.slice_index(row.slice_id)) {
      units[*m] += static_cast<double>(row.allocated_units);
      rows[*m] += 1;
    }
  std::vector<SliceUtilization> out;
  for (std::size_t m = 0; m < slices.size(); ++m)
    out.push_back(
        {slices[m].id, ratio(units[m], static_cast<double>(slices[m].capacity)),
         ratio(rows[m], static_cast<double>(slices[m].connection_capacity))});
  return out;
}

MetricsReport compute_metrics(const Scenario& scenario,
                              const Assignment& assignment) {
  MetricsReport m;
  m.completeness_pct = completeness(scenario, assignment);
  try {
    m.homogeneity = homogeneity(scenario, assignment);
  } catch (const EmptyInput&) {
    m.homogeneity.reset();
  }
  m.utilization = utilizations(scenario, assignment);
  m.violation_count =
      static_cast<std::int64_t>(validate(scenario, assignment).size());
  return m;
}

namespace {

// JSON has no infinity; a full zero-capacity slice is written as null.
nlohmann::json utilization_to_json(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double utilization_from_json(const nlohmann::json& v) {
  return v.is_null() ? std::numeric_limits<double>::infinity()
                     : v.get<double>();
}

}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& m) {
  nlohmann::json util = nlohmann::json::array();
  for (const SliceUtilization& u : m.utilization)
    util.push_back({{"slice", u.slice_id},
                    {"bandwidth", utilization_to_json(u.bandwidth)},
                    {"density", utilization_to_json(u.density)}});
  return {{"completeness_pct", m.completeness_pct},
          {"homogeneity", m.homogeneity ? nlohmann::json(*m.homogeneity)
                                        : nlohmann::json(nullptr)},
          {"violation_count", m.violation_count},
          {"utilization", std::move(util)}};
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
  MetricsReport m;
  try {
    m.completeness_pct = j.at("completeness_pct").get<double>();
    const auto& h = j.at("homogeneity");
    if (!h.is_null()) m.homogeneity = h.get<double>();
    m.violation_count = j.at("violation_count").get<std::int64_t>();
    for (const auto& u : j.at("utilization"))
      m.utilization.push_back({u.at("slice").get<std::string>(),
                               utilization_from_json(u.at("bandwidth")),
                               utilization_from_json(u.at("density"))});
  } catch (const nlohmann::json::exception& e) {
    throw SchemaViolation(std::string("metrics: ") + e.what());
  }
  return m;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw EmptyInput("cannot summarize zero values");
  Summary s;
  s.count = values.size();
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    s.mean = values.front();
    return s;
  }
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

AggregateReport aggregate(const std::vector<MetricsReport>& runs) {
  if (runs.empty()) throw EmptyInput("aggregate needs at least one run");
  AggregateReport a;
  a.runs = runs.size();
  std::vector<double> comp, homo, viol;
  std::vector<std::string> ids;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
      per_slice;
  for (const MetricsReport& r : runs) {
    comp.push_back(r.completeness_pct);
    if (r.homogeneity) homo.push_back(*r.homogeneity);
    viol.push_back(static_cast<double>(r.violation_count));
    for (const SliceUtilization& u : r.utilization) {
      if (!per_slice.count(u.slice_id)) ids.push_back(u.slice_id);
      per_slice[u.slice_id].first.push_back(u.bandwidth);
      per_slice[u.slice_id].second.push_back(u.density);
    }
  }
  a.completeness_pct = summarize(comp);
  if (!homo.empty()) a.homogeneity = summarize(homo);
  a.violation_count = summarize(viol);
  for (const std::string& id : ids)
    a.utilization.push_back(
        {id, summarize(per_slice[id].first), summarize(per_slice[id].second)});
  return a;
}

nlohmann::json aggregate_to_json(const AggregateReport& a) {
  auto sj = [](const Summary& s) {
    return nlohmann::json{{"mean", s.mean}, {"std", s.std}, {"n", s.count}};
  };
  nlohmann::json util = nlohmann::json::array();
  for (const SliceSummary& s : a.utilization)
    util.push_back({{"slice", s.slice_id},
                    {"bandwidth", sj(s.bandwidth)},
                    {"density", sj(s.density)}});
  return {{"runs", a.runs},
          {"completeness_pct", sj(a.completeness_pct)},
          {"homogeneity", sj(a.homogeneity)},
          {"violation_count", sj(a.violation_count)},
          {"utilization", std::move(util)}};
}

std::string format_fixed(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-')
    s.erase(0, 1);  // no "-0.000000"
  return s;
}

std::string metrics_csv_header(const std::vector<std::string>& slice_ids) {
  std::string h = "method,run,completeness_pct,homogeneity,violation_count";
  for (const auto& id : slice_ids) h += ",bandwidth_" + id;
  for (const auto& id : slice_ids) h += ",density_" + id;
  return h + "\n";
}

std::string metrics_csv_row(const std::string& method, const std::string& run,
                            const MetricsReport& m) {
  std::string row = method + "," + run + "," +
                    format_fixed(m.completeness_pct) + "," +
                    (m.homogeneity ? format_fixed(*m.homogeneity) : "") + "," +
                    std::to_string(m.violation_count);
  for (const auto& u : m.utilization) row += "," + format_fixed(u.bandwidth);
  for (const auto& u : m.utilization) row += "," + format_fixed(u.density);
  return row + "\n";
}

std::string aggregate_csv_rows(const std::string& method,
                               const AggregateReport& a) {
  std::string out;
  for (bool mean : {true, false}) {
    const auto pick = [&](const Summary& s) {
      return format_fixed(mean ? s.mean : s.std);
    };
    out += method + "," + (mean ? "mean" : "std") + "," +
           pick(a.completeness_pct) + "," +
           (a.homogeneity.count > 0 ? pick(a.homogeneity) : "") + "," +
           pick(a.violation_count);
    for (const auto& u : a.utilization) out += "," + pick(u.bandwidth);
    for (const auto& u : a.utilization) out += "," + pick(u.density);
    out += "\n";
  }
  return out;
}

}  // namespace slicekit
