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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slicekit {

// Base for every error the library raises on bad input or failed I/O.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a domain type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class ServiceClass { kEmbb, kUrllc, kMmtc };

inline constexpr int kServiceClassCount = 3;

std::string_view to_string(ServiceClass c);
// Accepts "eMBB"/"URLLC"/"mMTC" in any letter case.
std::optional<ServiceClass> service_class_from_string(std::string_view s);

struct Slice {
  std::string id;
  ServiceClass slice_class = ServiceClass::kEmbb;
  std::int64_t capacity = 0;
  double latency_guarantee_ms = 1.0;
  std::int64_t connection_capacity = 1;

  friend bool operator==(const Slice&, const Slice&) = default;
};

struct Request {
  std::string id;
  std::int64_t demand = 1;
  double latency_req_ms = 1.0;
  // Ground-truth service class. Used by the generator and by homogeneity
  // scoring, never by the solver.
  ServiceClass archetype = ServiceClass::kEmbb;
  std::string description;

  friend bool operator==(const Request&, const Request&) = default;
};

// True iff a slice with guarantee `slice_latency_ms` can serve a request that
// tolerates at most `request_latency_ms`. Equal latency is compatible.
inline bool latency_compatible(double slice_latency_ms,
                               double request_latency_ms) {
  return slice_latency_ms <= request_latency_ms;
}

// Fixed slice set and request batch. Immutable; the constructor enforces all
// invariants and throws DomainError on the first one that fails.
class Scenario {
 public:
  Scenario(std::vector<Slice> slices, std::vector<Request> requests,
           std::uint64_t seed = 0);

  const std::vector<Slice>& slices() const { return slices_; }
  const std::vector<Request>& requests() const { return requests_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t slice_count() const { return slices_.size(); }
  std::size_t request_count() const { return requests_.size(); }

  std::optional<std::size_t> slice_index(std::string_view id) const;
  std::optional<std::size_t> request_index(std::string_view id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<Slice> slices_;
  std::vector<Request> requests_;
  std::uint64_t seed_;
};

// Row-major N x M matrix; entry (i, m) is true iff slice m's latency
// guarantee satisfies request i.
class FeasibilityMask {
 public:
  FeasibilityMask(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool operator()(std::size_t i, std::size_t m) const {
    return cells_[i * cols_ + m] != 0;
  }
  void set(std::size_t i, std::size_t m, bool v) {
    cells_[i * cols_ + m] = v ? 1 : 0;
  }

  friend bool operator==(const FeasibilityMask&,
                         const FeasibilityMask&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;
};

FeasibilityMask latency_feasibility_mask(const Scenario& scenario);

enum class SimilaritySource { kLlm, kHeuristicBaseline, kExplicit };

std::string_view to_string(SimilaritySource s);
std::optional<SimilaritySource> similarity_source_from_string(
    std::string_view s);

// Binary similarity over unordered request pairs. Only the strict upper
// triangle is stored. sim(i, i) reads as 1.
class SimilarityMatrix {
 public:
  // All-zero matrix.
  SimilarityMatrix(std::size_t n, SimilaritySource source);
  // `upper` lists pairs (0,1), (0,2), ..., (0,n-1), (1,2), ... in that order.
  SimilarityMatrix(std::size_t n, SimilaritySource source,
                   std::vector<std::uint8_t> upper);

  std::size_t n() const { return n_; }
  SimilaritySource source() const { return source_; }
  std::size_t pair_count() const { return values_.size(); }

  int at(std::size_t i, std::size_t j) const;
  // Copy with the value of the unordered pair {i, j} replaced.
  SimilarityMatrix with_value(std::size_t i, std::size_t j, int value) const;
  // Number of pairs with value 1.
  std::size_t similar_pair_count() const;

  // Packed index of pair {i, j}, i != j.
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  const std::vector<std::uint8_t>& packed() const { return values_; }

  friend bool operator==(const SimilarityMatrix&,
                         const SimilarityMatrix&) = default;

 private:
  std::size_t n_;
  SimilaritySource source_;
  std::vector<std::uint8_t> values_;
};

struct AssignmentRow {
  std::string slice_id;
  std::string request_id;
  std::int64_t allocated_units = 0;

  friend bool operator==(const AssignmentRow&, const AssignmentRow&) = default;
};

// Realized x_{i,m}: one row per assigned request. Rejects repeated request
// ids and negative units; everything else is the validator's concern.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<AssignmentRow> rows);

  const std::vector<AssignmentRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<AssignmentRow> rows_;
};

struct PairTerm {
  std::size_t i;
  std::size_t j;
  std::size_t slice;

  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};

// Similarity-maximizing assignment ILP over (x, z). Only pairs that are
// similar and share at least one allowed slice get z variables.
struct IlpFormulation {
  FeasibilityMask allowed{0, 0};
  // Unordered pairs (i < j) carrying z variables.
  std::vector<std::pair<std::size_t, std::size_t>> pair_vars;
  // (i, j, m) for every z_{i,j,m} with unit weight in the objective.
  std::vector<PairTerm> objective_terms;
};

}  // namespace slicekit
