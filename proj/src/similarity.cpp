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

#include "slicekit/similarity.hpp"

#include <algorithm>
#include <stdexcept>

#include "slicekit/parallel.hpp"
#include "slicekit/scenario.hpp"

namespace slicekit {

using Pair = std::pair<std::size_t, std::size_t>;

SimilarityMatrix baseline_similarity(const Scenario& scenario) {
  const auto& reqs = scenario.requests();
  const std::size_t n = reqs.size();
  std::vector<std::uint8_t> upper;
  upper.reserve(n < 2 ? 0 : n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      upper.push_back(reqs[i].archetype == reqs[j].archetype ? 1 : 0);
  return SimilarityMatrix(n, SimilaritySource::kHeuristicBaseline,
                          std::move(upper));
}

namespace {

// Judges one batch; writes into the packed slots owned by this batch.
void judge_batch(const Scenario& scenario, ChatProvider& provider,
                 const SimilarityOptions& options, std::vector<Pair> pending,
                 const SimilarityMatrix& layout,
                 std::vector<std::uint8_t>& values) {
  std::string last_error = "pairs left unjudged";
  for (int attempt = 0; attempt <= options.max_retries && !pending.empty();
       ++attempt) {
    const PromptBundle prompt = render_similarity_prompt(scenario, pending);
    std::string reply;
    try {
      reply = provider.chat(
          {prompt.system_text, prompt.user_text, options.temperature});
    } catch (const GatewayError& e) {
      last_error = e.what();
      continue;
    }
    std::vector<Pair> still;
    const auto judgments = parse_similarity_response(reply);
    for (const Pair& p : pending) {
      auto it = std::find_if(judgments.begin(), judgments.end(),
                             [&](const SimilarityJudgment& s) {
                               return s.i == p.first && s.j == p.second;
                             });
      if (it == judgments.end()) {
        still.push_back(p);
      } else {
        values[layout.pair_index(p.first, p.second)] =
            static_cast<std::uint8_t>(it->value);
      }
    }
    pending = std::move(still);
  }
  if (pending.empty()) return;
  if (!options.fallback)
    throw GatewayError("similarity judgments missing for " +
                       std::to_string(pending.size()) +
                       " pair(s) after retries: " + last_error);
  for (const Pair& p : pending)
    values[layout.pair_index(p.first, p.second)] =
        static_cast<std::uint8_t>(*options.fallback);
}

}  // namespace

SimilarityMatrix llm_similarity(const Scenario& scenario,
                                ChatProvider& provider,
                                const SimilarityOptions& options) {
  if (options.batch_size == 0)
    throw std::invalid_argument("similarity batch_size must be positive");
  if (options.fallback && *options.fallback != 0 && *options.fallback != 1)
    throw std::invalid_argument("similarity fallback must be 0 or 1");
  const std::size_t n = scenario.request_count();
  const SimilarityMatrix layout(n, SimilaritySource::kLlm);
  std::vector<std::uint8_t> values(layout.pair_count(), 0);

  std::vector<std::vector<Pair>> batches;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (batches.empty() || batches.back().size() == options.batch_size)
        batches.emplace_back();
      batches.back().emplace_back(i, j);
    }

  parallel_for(batches.size(),
               static_cast<std::size_t>(std::max(1, options.parallelism)),
               [&](std::size_t b) {
                 judge_batch(scenario, provider, options, batches[b], layout,
                             values);
               });
  return SimilarityMatrix(n, SimilaritySource::kLlm, std::move(values));
}

double matrix_agreement(const SimilarityMatrix& a, const SimilarityMatrix& b) {
  if (a.n() != b.n())
    throw DimensionMismatch(
        "similarity matrices have n=" + std::to_string(a.n()) +
        " and n=" + std::to_string(b.n()));
  if (a.pair_count() == 0) return 1.0;
  std::size_t same = 0;
  for (std::size_t k = 0; k < a.pair_count(); ++k)
    same += a.packed()[k] == b.packed()[k];
  return static_cast<double>(same) / static_cast<double>(a.pair_count());
}

nlohmann::json similarity_to_json(const SimilarityMatrix& sim) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < sim.n(); ++i)
    for (std::size_t j = i + 1; j < sim.n(); ++j)
      pairs.push_back({i, j, sim.at(i, j)});
  return {{"n", sim.n()},
          {"source", std::string(to_string(sim.source()))},
          {"pairs", std::move(pairs)}};
}

namespace {

bool is_index(const nlohmann::json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

}  // namespace

SimilarityMatrix similarity_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaViolation("similarity: expected an object");
  if (!j.contains("n") || !is_index(j["n"]))
    throw SchemaViolation("n: expected a non-negative integer");
  const auto n = j["n"].get<std::size_t>();
  SimilaritySource source = SimilaritySource::kExplicit;
  if (j.contains("source")) {
    auto s = j["source"].is_string()
                 ? similarity_source_from_string(j["source"].get<std::string>())
                 : std::nullopt;
    if (!s) throw SchemaViolation("source: expected llm|baseline|explicit");
    source = *s;
  }
  if (!j.contains("pairs") || !j["pairs"].is_array())
    throw SchemaViolation("pairs: expected an array");

  SimilarityMatrix layout(n, source);
  std::vector<std::uint8_t> values(layout.pair_count(), 0);
  std::vector<std::uint8_t> seen(layout.pair_count(), 0);
  const auto& pairs = j["pairs"];
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string path = "pairs[" + std::to_string(k) + "]";
    const auto& p = pairs[k];
    if (!p.is_array() || p.size() != 3 || !is_index(p[0]) || !is_index(p[1]) ||
        !is_index(p[2]))
      throw SchemaViolation(path + ": expected [i, j, v] integers");
    const auto i = p[0].get<std::size_t>();
    const auto jj = p[1].get<std::size_t>();
    const auto v = p[2].get<std::uint64_t>();
    if (i >= jj || jj >= n) throw SchemaViolation(path + ": need i < j < n");
    if (v > 1) throw SchemaViolation(path + ": value must be 0 or 1");
    const std::size_t slot = layout.pair_index(i, jj);
    if (seen[slot] && values[slot] != v)
      throw SchemaViolation(path + ": conflicting duplicate pair");
    seen[slot] = 1;
    values[slot] = static_cast<std::uint8_t>(v);
  }
  return SimilarityMatrix(n, source, std::move(values));
}

void save_similarity(const SimilarityMatrix& sim,
                     const std::filesystem::path& path) {
  write_text_file(path, similarity_to_json(sim).dump() + "\n");
}

SimilarityMatrix load_similarity(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded())
    throw SchemaViolation("'" + path.string() + "' is not valid JSON");
  return similarity_from_json(j);
}

}  // namespace slicekit
