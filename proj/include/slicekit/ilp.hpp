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
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slicekit/domain.hpp"

namespace slicekit {

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit };

std::string_view to_string(SolveStatus status);

inline constexpr std::uint64_t kDefaultNodeLimit = 5'000'000;
// Largest M^N the brute-force oracle will enumerate.
inline constexpr std::uint64_t kOracleMaxAssignments = 10'000'000;

struct SolveResult {
  // Absent when infeasible, or when the node budget ran out before any
  // complete assignment was found.
  std::optional<Assignment> assignment;
  // Slice index per request (-1 where no assignment is available).
  std::vector<int> placement;
  std::int64_t objective = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  std::uint64_t nodes_explored = 0;
};

// Throws DimensionMismatch when sim.n() differs from the request count.
IlpFormulation build_formulation(const Scenario& scenario,
                                 const SimilarityMatrix& sim);

// Exact depth-first branch-and-bound. Among optimal assignments the
// lexicographically smallest placement vector (request index order, slice
// index values) is returned. Every placed row allocates the request's full
// demand.
SolveResult solve(const IlpFormulation& formulation, const Scenario& scenario,
                  std::uint64_t node_limit = kDefaultNodeLimit);

// Enumerates every latency-feasible complete assignment in lexicographic
// order. Same tie-break as solve. Throws InstanceTooLarge when
// M^N > kOracleMaxAssignments.
SolveResult brute_force_oracle(const Scenario& scenario,
                               const SimilarityMatrix& sim);

// {"rows":[{"slice","request","units"}], "objective", "status", "nodes"}
nlohmann::json solve_result_to_json(const SolveResult& result);
nlohmann::json assignment_to_json(const Assignment& assignment);
// Reads the "rows" array of either document shape. Throws SchemaViolation.
Assignment assignment_from_json(const nlohmann::json& j);

}  // namespace slicekit
