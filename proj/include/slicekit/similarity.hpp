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

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "slicekit/domain.hpp"
#include "slicekit/llm_gateway.hpp"

namespace slicekit {

// sim(i, j) = 1 iff requests i and j share an archetype.
SimilarityMatrix baseline_similarity(const Scenario& scenario);

struct SimilarityOptions {
  std::size_t batch_size = 50;
  double temperature = 0.8;
  int max_retries = 2;
  int parallelism = 4;
  // Value for pairs still unjudged once retries run out. nullopt turns the
  // fallback off, so leftover pairs raise GatewayError instead.
  std::optional<int> fallback = 0;
};

// Asks the provider about every unordered pair, batch_size pairs per prompt.
// Pairs missing or malformed in a reply are re-asked (up to max_retries
// times per batch) before the fallback applies.
SimilarityMatrix llm_similarity(const Scenario& scenario,
                                ChatProvider& provider,
                                const SimilarityOptions& options = {});

// Fraction of unordered pairs on which a and b agree; 1.0 when n < 2.
// Throws DimensionMismatch.
double matrix_agreement(const SimilarityMatrix& a, const SimilarityMatrix& b);

nlohmann::json similarity_to_json(const SimilarityMatrix& sim);
// Pairs absent from "pairs" read as 0. Throws SchemaViolation.
SimilarityMatrix similarity_from_json(const nlohmann::json& j);
void save_similarity(const SimilarityMatrix& sim,
                     const std::filesystem::path& path);
SimilarityMatrix load_similarity(const std::filesystem::path& path);

}  // namespace slicekit
