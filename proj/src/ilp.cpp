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

#include "slicekit/ilp.hpp"

#include <algorithm>
#include <numeric>

#include "slicekit/scenario.hpp"

namespace slicekit {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "OPTIMAL";
    case SolveStatus::kInfeasible:
      return "INFEASIBLE";
    case SolveStatus::kNodeLimit:
      return "NODE_LIMIT";
  }
  return "?";
}

IlpFormulation build_formulation(const Scenario& scenario,
                                 const SimilarityMatrix& sim) {
  const std::size_t n = scenario.request_count();
  if (sim.n() != n)
    throw DimensionMismatch(
        "similarity matrix has n=" + std::to_string(sim.n()) +
        " but the scenario has " + std::to_string(n) + " requests");
  IlpFormulation f;
  f.allowed = latency_feasibility_mask(scenario);
  const std::size_t m_count = scenario.slice_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sim.at(i, j) == 0) continue;
      bool shared = false;
      for (std::size_t m = 0; m < m_count; ++m)
        if (f.allowed(i, m) && f.allowed(j, m)) {
          f.objective_terms.push_back({i, j, m});
          shared = true;
        }
      if (shared) f.pair_vars.emplace_back(i, j);
    }
  return f;
}

namespace {

std::optional<Assignment> to_assignment(const Scenario& scenario,
                                        const std::vector<int>& placement) {
  std::vector<AssignmentRow> rows;
  rows.reserve(placement.size());
  for (std::size_t i = 0; i < placement.size(); ++i) {
    const Request& r = scenario.requests()[i];
    rows.push_back(
        {scenario.slices()[static_cast<std::size_t>(placement[i])].id, r.id,
         r.demand});
  }
  return Assignment(std::move(rows));
}

class BranchAndBound {
 public:
  BranchAndBound(const IlpFormulation& f, const Scenario& scenario,
                 std::uint64_t node_limit)
      : f_(f),
        scenario_(scenario),
        node_limit_(node_limit),
        n_(scenario.request_count()),
        m_(scenario.slice_count()) {
    demand_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      demand_[i] = scenario.requests()[i].demand;
    for (const Slice& s : scenario.slices()) residual_.push_back(s.capacity);

    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(
        order_.begin(), order_.end(),
        [&](std::size_t a, std::size_t b) { return demand_[a] > demand_[b]; });
    rank_.resize(n_);
    for (std::size_t p = 0; p < n_; ++p) rank_[order_[p]] = p;

    // tail_sum_[t]: total demand of the t smallest requests (the last t in
    // branching order).
    tail_sum_.assign(n_ + 1, 0);
    for (std::size_t t = 1; t <= n_; ++t)
      tail_sum_[t] = tail_sum_[t - 1] + demand_[order_[n_ - t]];
    remaining_demand_ = tail_sum_[n_];

    neighbors_.resize(n_);
    for (auto [i, j] : f.pair_vars) {
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
    later_.assign(n_ * m_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k : neighbors_[i])
        if (rank_[k] > rank_[i])
          for (std::size_t m = 0; m < m_; ++m)
            if (f.allowed(i, m) && f.allowed(k, m)) ++later_[i * m_ + m];
    placed_on_.assign(n_ * m_, 0);

    min_allowed_.assign(n_, -1);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t m = 0; m < m_; ++m)
        if (f.allowed(i, m)) {
          min_allowed_[i] = static_cast<int>(m);
          break;
        }
    placement_.assign(n_, -1);
  }

  SolveResult run() {
    search(0);
    SolveResult result;
    result.nodes_explored = nodes_;
    if (aborted_) {
      result.status = SolveStatus::kNodeLimit;
    } else {
      result.status = best_.empty() && n_ > 0 ? SolveStatus::kInfeasible
                                              : SolveStatus::kOptimal;
      if (n_ == 0) best_score_ = 0;
    }
    if (has_incumbent()) {
      result.placement = best_;
      result.objective = best_score_;
      result.assignment = to_assignment(scenario_, best_);
    } else {
      result.placement.assign(n_, -1);
    }
    return result;
  }

 private:
  bool has_incumbent() const { return n_ == 0 || !best_.empty(); }

  // Largest number of still-unplaced requests (besides the one at `depth`)
  // whose demands fit into `room`.
  std::size_t fit_count(std::size_t depth, std::int64_t room) const {
    if (room <= 0) return 0;
    const std::size_t max_t = n_ - depth - 1;
    const auto end = tail_sum_.begin() + static_cast<std::ptrdiff_t>(max_t + 1);
    const auto it = std::upper_bound(tail_sum_.begin(), end, room);
    return static_cast<std::size_t>(it - tail_sum_.begin()) - 1;
  }

  // Upper bound on the final objective reachable from this node, or -1 if
  // some unplaced request no longer fits anywhere. Each unrealized similar
  // pair is charged to exactly one request: to the unplaced end of a
  // placed/unplaced pair, or to the earlier request in branching order when
  // both are unplaced.
  std::int64_t bound(std::size_t depth) const {
    std::int64_t total = score_;
    for (std::size_t p = depth; p < n_; ++p) {
      const std::size_t j = order_[p];
      std::int64_t best_gain = -1;
      for (std::size_t m = 0; m < m_; ++m) {
        if (!f_.allowed(j, m) || residual_[m] < demand_[j]) continue;
        const auto later = static_cast<std::int64_t>(later_[j * m_ + m]);
        const auto fit =
            static_cast<std::int64_t>(fit_count(p, residual_[m] - demand_[j]));
        best_gain =
            std::max(best_gain, placed_on_[j * m_ + m] + std::min(later, fit));
      }
      if (best_gain < 0) return -1;
      total += best_gain;
    }
    return total;
  }

  // Could some completion of the current partial placement be
  // lexicographically smaller than the incumbent?
  bool may_beat_incumbent_lex() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const int v = placement_[i] >= 0 ? placement_[i] : min_allowed_[i];
      if (v < best_[i]) return true;
      if (v > best_[i]) return false;
    }
    return false;
  }

  void search(std::size_t depth) {
    if (aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    if (depth == n_) {
      if (best_.empty() || score_ > best_score_ ||
          (score_ == best_score_ && placement_ < best_)) {
        best_ = placement_;
        best_score_ = score_;
      }
      return;
    }

    std::int64_t room = 0;
    for (std::int64_t r : residual_) room += r;
    if (room < remaining_demand_) return;

    const std::int64_t ub = bound(depth);
    if (ub < 0) return;
    if (!best_.empty()) {
      if (ub < best_score_) return;
      if (ub == best_score_ && !may_beat_incumbent_lex()) return;
    }

    const std::size_t j = order_[depth];
    for (std::size_t m = 0; m < m_; ++m) {
      if (!f_.allowed(j, m) || residual_[m] < demand_[j]) continue;
      place(j, m);
      search(depth + 1);
      unplace(j, m);
      if (aborted_) return;
    }
  }

  void place(std::size_t j, std::size_t m) {
    placement_[j] = static_cast<int>(m);
    residual_[m] -= demand_[j];
    remaining_demand_ -= demand_[j];
    score_ += placed_on_[j * m_ + m];
    for (std::size_t k : neighbors_[j]) ++placed_on_[k * m_ + m];
  }

  void unplace(std::size_t j, std::size_t m) {
    for (std::size_t k : neighbors_[j]) --placed_on_[k * m_ + m];
    score_ -= placed_on_[j * m_ + m];
    remaining_demand_ += demand_[j];
    residual_[m] += demand_[j];
    placement_[j] = -1;
  }

  const IlpFormulation& f_;
  const Scenario& scenario_;
  std::uint64_t node_limit_;
  std::size_t n_;
  std::size_t m_;

  std::vector<std::int64_t> demand_;
  std::vector<std::int64_t> residual_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<std::int64_t> tail_sum_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::size_t> later_;       // [j * m + slice]
  std::vector<std::int64_t> placed_on_;  // [j * m + slice]
  std::vector<int> min_allowed_;
  std::int64_t remaining_demand_ = 0;

  std::vector<int> placement_;
  std::int64_t score_ = 0;
  std::vector<int> best_;
  std::int64_t best_score_ = -1;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SolveResult solve(const IlpFormulation& formulation, const Scenario& scenario,
                  std::uint64_t node_limit) {
  if (formulation.allowed.rows() != scenario.request_count() ||
      formulation.allowed.cols() != scenario.slice_count())
    throw DimensionMismatch("formulation does not match the scenario");
  return BranchAndBound(formulation, scenario, node_limit).run();
}

SolveResult brute_force_oracle(const Scenario& scenario,
                               const SimilarityMatrix& sim) {
  const std::size_t n = scenario.request_count();
  const std::size_t m_count = scenario.slice_count();
  if (sim.n() != n)
    throw DimensionMismatch("similarity matrix does not match the scenario");
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    space *= m_count;
    if (space > kOracleMaxAssignments)
      throw InstanceTooLarge("brute force limited to M^N <= 10^7");
  }

  const FeasibilityMask mask = latency_feasibility_mask(scenario);
  std::vector<std::vector<int>> choices(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < m_count; ++m)
      if (mask(i, m)) choices[i].push_back(static_cast<int>(m));

  SolveResult result;
  result.status = SolveStatus::kInfeasible;
  result.placement.assign(n, -1);
  std::vector<std::size_t> digit(n, 0);
  std::vector<int> placement(n);
  std::vector<std::int64_t> load(m_count);
  std::int64_t best = -1;
  // Odometer with request 0 as the most significant digit.
  const auto advance = [&] {
    for (std::size_t pos = n; pos-- > 0;) {
      if (++digit[pos] < choices[pos].size()) return true;
      digit[pos] = 0;
    }
    return false;
  };
  do {
    ++result.nodes_explored;
    for (std::size_t i = 0; i < n; ++i) placement[i] = choices[i][digit[i]];
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      load[static_cast<std::size_t>(placement[i])] +=
          scenario.requests()[i].demand;
    bool fits = true;
    for (std::size_t m = 0; m < m_count; ++m)
      fits = fits && load[m] <= scenario.slices()[m].capacity;
    if (!fits) continue;
    std::int64_t score = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (placement[i] == placement[j]) score += sim.at(i, j);
    if (score > best) {
      best = score;
      result.placement = placement;
    }
  } while (advance());
  if (best >= 0) {
    result.status = SolveStatus::kOptimal;
    result.objective = best;
    result.assignment = to_assignment(scenario, result.placement);
  }
  return result;
}

nlohmann::json assignment_to_json(const Assignment& assignment) {
  nlohmann::json rows = nlohmann::json::array();
  for (const AssignmentRow& r : assignment.rows())
    rows.push_back({{"slice", r.slice_id},
                    {"request", r.request_id},
                    {"units", r.allocated_units}});
  return {{"rows", std::move(rows)}};
}

nlohmann::json solve_result_to_json(const SolveResult& result) {
  nlohmann::json j = result.assignment
                         ? assignment_to_json(*result.assignment)
                         : nlohmann::json{{"rows", nlohmann::json::array()}};
  j["objective"] = result.objective;
  j["status"] = std::string(to_string(result.status));
  j["nodes"] = result.nodes_explored;
  return j;
}

Assignment assignment_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw SchemaViolation("assignment: expected {\"rows\": [...]}");
  std::vector<AssignmentRow> rows;
  const auto& arr = j["rows"];
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = "rows[" + std::to_string(k) + "]";
    const auto& r = arr[k];
    if (!r.is_object() || !r.contains("slice") || !r["slice"].is_string() ||
        !r.contains("request") || !r["request"].is_string())
      throw SchemaViolation(path + ": slice and request must be strings");
    if (!r.contains("units") || !r["units"].is_number_integer() ||
        (!r["units"].is_number_unsigned() &&
         r["units"].get<std::int64_t>() < 0))
      throw SchemaViolation(path + ".units: expected an integer >= 0");
    rows.push_back({r["slice"].get<std::string>(),
                    r["request"].get<std::string>(),
                    r["units"].get<std::int64_t>()});
  }
  try {
    return Assignment(std::move(rows));
  } catch (const DomainError& e) {
    throw SchemaViolation(std::string("rows: ") + e.what());
  }
}

}  // namespace slicekit
