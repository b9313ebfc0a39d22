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

// Helpers shared by the unit and acceptance suites. Uses public types only
// and recomputes quantities from scratch.

#include <cstdint>
#include <string>
#include <vector>

#include "slicekit/domain.hpp"
#include "slicekit/rng.hpp"

namespace slicekit::testing {

inline Slice make_slice(std::string id, ServiceClass c, std::int64_t capacity,
                        double latency_ms, std::int64_t connections = 10) {
  return Slice{std::move(id), c, capacity, latency_ms, connections};
}

inline Request make_request(std::string id, std::int64_t demand,
                            double latency_ms,
                            ServiceClass archetype = ServiceClass::kEmbb) {
  return Request{std::move(id), demand, latency_ms, archetype, "test request"};
}

// Random instance with M = 3 slices and N requests. Latencies are drawn so
// every request can use at least the first (tightest) slice.
inline Scenario random_small_scenario(Rng& rng, std::size_t n) {
  const auto k = static_cast<std::int64_t>(n);
  std::vector<Slice> slices = {
      make_slice("SliceA", ServiceClass::kEmbb, rng.uniform_int(4, 4 + 4 * k),
                 20),
      make_slice("SliceB", ServiceClass::kUrllc, rng.uniform_int(2, 6 + 4 * k),
                 1),
      make_slice("SliceC", ServiceClass::kMmtc, rng.uniform_int(4, 4 + 4 * k),
                 40),
  };
  std::vector<Request> requests;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cls = static_cast<ServiceClass>(rng.uniform_int(0, 2));
    const double latency =
        std::vector<double>{1, 20, 40, 60, 100, 200}[static_cast<std::size_t>(
            rng.uniform_int(0, 5))];
    requests.push_back(make_request("Request" + std::to_string(i + 1),
                                    rng.uniform_int(1, 8), latency, cls));
  }
  return Scenario(std::move(slices), std::move(requests), 0);
}

inline SimilarityMatrix random_similarity(Rng& rng, std::size_t n,
                                          double density) {
  std::vector<std::uint8_t> upper(n < 2 ? 0 : n * (n - 1) / 2);
  for (auto& v : upper) v = rng.uniform01() < density ? 1 : 0;
  return SimilarityMatrix(n, SimilaritySource::kExplicit, std::move(upper));
}

// slice index per request, or -1; built by id lookup without library help.
inline std::vector<int> placement_of(const Scenario& s, const Assignment& a) {
  std::vector<int> out(s.request_count(), -1);
  for (const auto& row : a.rows()) {
    int m = -1;
    for (std::size_t k = 0; k < s.slice_count(); ++k)
      if (s.slices()[k].id == row.slice_id) m = static_cast<int>(k);
    for (std::size_t i = 0; i < s.request_count(); ++i)
      if (s.requests()[i].id == row.request_id) out[i] = m;
  }
  return out;
}

// Sum of sim(i, j) over co-located pairs, i.e. the ILP objective with
// z_{i,j,m} = x_{i,m} * x_{j,m}.
inline std::int64_t colocated_similarity(const std::vector<int>& placement,
                                         const SimilarityMatrix& sim) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < placement.size(); ++i)
    for (std::size_t j = i + 1; j < placement.size(); ++j)
      if (placement[i] >= 0 && placement[i] == placement[j])
        total += sim.at(i, j);
  return total;
}

// Complete, latency-feasible and within capacity at full demand.
inline bool ilp_feasible(const Scenario& s, const std::vector<int>& placement) {
  std::vector<std::int64_t> load(s.slice_count(), 0);
  for (std::size_t i = 0; i < placement.size(); ++i) {
    if (placement[i] < 0) return false;
    const auto& slice = s.slices()[static_cast<std::size_t>(placement[i])];
    if (slice.latency_guarantee_ms > s.requests()[i].latency_req_ms)
      return false;
    load[static_cast<std::size_t>(placement[i])] += s.requests()[i].demand;
  }
  for (std::size_t m = 0; m < s.slice_count(); ++m)
    if (load[m] > s.slices()[m].capacity) return false;
  return true;
}

inline Assignment assignment_from_placement(const Scenario& s,
                                            const std::vector<int>& placement) {
  std::vector<AssignmentRow> rows;
  for (std::size_t i = 0; i < placement.size(); ++i)
    if (placement[i] >= 0)
      rows.push_back({s.slices()[static_cast<std::size_t>(placement[i])].id,
                      s.requests()[i].id, s.requests()[i].demand});
  return Assignment(std::move(rows));
}

}  // namespace slicekit::testing
