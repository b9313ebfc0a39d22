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

#include "slicekit/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace slicekit {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view to_string(ServiceClass c) {
  switch (c) {
    case ServiceClass::kEmbb:
      return "eMBB";
    case ServiceClass::kUrllc:
      return "URLLC";
    case ServiceClass::kMmtc:
      return "mMTC";
  }
  return "?";
}

std::optional<ServiceClass> service_class_from_string(std::string_view s) {
  const std::string l = lower(s);
  if (l == "embb") return ServiceClass::kEmbb;
  if (l == "urllc") return ServiceClass::kUrllc;
  if (l == "mmtc") return ServiceClass::kMmtc;
  return std::nullopt;
}

std::string_view to_string(SimilaritySource s) {
  switch (s) {
    case SimilaritySource::kLlm:
      return "llm";
    case SimilaritySource::kHeuristicBaseline:
      return "baseline";
    case SimilaritySource::kExplicit:
      return "explicit";
  }
  return "?";
}

std::optional<SimilaritySource> similarity_source_from_string(
    std::string_view s) {
  const std::string l = lower(s);
  if (l == "llm") return SimilaritySource::kLlm;
  if (l == "baseline") return SimilaritySource::kHeuristicBaseline;
  if (l == "explicit") return SimilaritySource::kExplicit;
  return std::nullopt;
}

Scenario::Scenario(std::vector<Slice> slices, std::vector<Request> requests,
                   std::uint64_t seed)
    : slices_(std::move(slices)), requests_(std::move(requests)), seed_(seed) {
  if (slices_.empty()) throw DomainError("scenario needs at least one slice");

  std::set<std::string, std::less<>> seen;
  for (const Slice& s : slices_) {
    if (s.id.empty()) throw DomainError("slice id must not be empty");
    if (!seen.insert(s.id).second)
      throw DomainError("duplicate slice id '" + s.id + "'");
    if (s.capacity < 0)
      throw DomainError("slice '" + s.id + "': capacity must be >= 0");
    if (!std::isfinite(s.latency_guarantee_ms) || s.latency_guarantee_ms <= 0)
      throw DomainError("slice '" + s.id + "': latency must be > 0");
    if (s.connection_capacity < 1)
      throw DomainError("slice '" + s.id + "': connections must be >= 1");
  }

  seen.clear();
  for (const Request& r : requests_) {
    if (r.id.empty()) throw DomainError("request id must not be empty");
    if (!seen.insert(r.id).second)
      throw DomainError("duplicate request id '" + r.id + "'");
    if (r.demand < 1)
      throw DomainError("request '" + r.id + "': demand must be >= 1");
    if (!std::isfinite(r.latency_req_ms) || r.latency_req_ms <= 0)
      throw DomainError("request '" + r.id + "': latency must be > 0");
    const bool servable =
        std::any_of(slices_.begin(), slices_.end(), [&](const Slice& s) {
          return latency_compatible(s.latency_guarantee_ms, r.latency_req_ms);
        });
    if (!servable)
      throw DomainError("request '" + r.id +
                        "' has no latency-compatible slice");
  }
}

std::optional<std::size_t> Scenario::slice_index(std::string_view id) const {
  for (std::size_t m = 0; m < slices_.size(); ++m)
    if (slices_[m].id == id) return m;
  return std::nullopt;
}

std::optional<std::size_t> Scenario::request_index(std::string_view id) const {
  for (std::size_t i = 0; i < requests_.size(); ++i)
    if (requests_[i].id == id) return i;
  return std::nullopt;
}

FeasibilityMask latency_feasibility_mask(const Scenario& scenario) {
  const auto& slices = scenario.slices();
  const auto& requests = scenario.requests();
  FeasibilityMask mask(requests.size(), slices.size());
  for (std::size_t i = 0; i < requests.size(); ++i)
    for (std::size_t m = 0; m < slices.size(); ++m)
      mask.set(i, m,
               latency_compatible(slices[m].latency_guarantee_ms,
                                  requests[i].latency_req_ms));
  return mask;
}

SimilarityMatrix::SimilarityMatrix(std::size_t n, SimilaritySource source)
    : n_(n), source_(source), values_(n < 2 ? 0 : n * (n - 1) / 2, 0) {}

SimilarityMatrix::SimilarityMatrix(std::size_t n, SimilaritySource source,
                                   std::vector<std::uint8_t> upper)
    : n_(n), source_(source), values_(std::move(upper)) {
  const std::size_t expected = n < 2 ? 0 : n * (n - 1) / 2;
  if (values_.size() != expected)
    throw DimensionMismatch("similarity matrix of n=" + std::to_string(n) +
                            " needs " + std::to_string(expected) +
                            " pair values, got " +
                            std::to_string(values_.size()));
  for (std::uint8_t v : values_)
    if (v > 1) throw DomainError("similarity values must be 0 or 1");
}

std::size_t SimilarityMatrix::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n_) throw std::out_of_range("bad similarity pair index");
  // Rows 0..i-1 hold (n-1) + (n-2) + ... + (n-i) entries.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

int SimilarityMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j) {
    if (i >= n_) throw std::out_of_range("bad similarity index");
    return 1;
  }
  return values_[pair_index(i, j)];
}

SimilarityMatrix SimilarityMatrix::with_value(std::size_t i, std::size_t j,
                                              int value) const {
  if (value != 0 && value != 1)
    throw DomainError("similarity values must be 0 or 1");
  SimilarityMatrix copy = *this;
  copy.values_[pair_index(i, j)] = static_cast<std::uint8_t>(value);
  return copy;
}

std::size_t SimilarityMatrix::similar_pair_count() const {
  return static_cast<std::size_t>(
      std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

Assignment::Assignment(std::vector<AssignmentRow> rows)
    : rows_(std::move(rows)) {
  std::set<std::string, std::less<>> seen;
  for (const AssignmentRow& row : rows_) {
    if (row.allocated_units < 0)
      throw DomainError("request '" + row.request_id +
                        "': allocated units must be >= 0");
    if (!seen.insert(row.request_id).second)
      throw DomainError("request '" + row.request_id +
                        "' assigned more than once");
  }
}

}  // namespace slicekit
