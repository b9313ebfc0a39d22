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

#include <gtest/gtest.h>

#include "slicekit/scenario.hpp"
#include "test_support.hpp"

namespace slicekit {
namespace {

using testing::make_request;
using testing::make_slice;

Scenario scenario_of(std::vector<ServiceClass> classes) {
  std::vector<Request> requests;
  for (std::size_t i = 0; i < classes.size(); ++i)
    requests.push_back(
        make_request("Request" + std::to_string(i + 1), 1, 100, classes[i]));
  return Scenario({make_slice("SliceA", ServiceClass::kEmbb, 50, 10)},
                  std::move(requests));
}

Scenario generated(std::int64_t n, std::uint64_t seed = 4) {
  auto c = GeneratorConfig::defaults();
  c.seed = seed;
  c.n_requests = n;
  return generate(c);
}

TEST(BaselineSimilarityTest, ClassEquality) {
  const auto s = scenario_of(
      {ServiceClass::kEmbb, ServiceClass::kEmbb, ServiceClass::kUrllc});
  const auto sim = baseline_similarity(s);
  EXPECT_EQ(sim.source(), SimilaritySource::kHeuristicBaseline);
  EXPECT_EQ(sim.at(0, 1), 1);
  EXPECT_EQ(sim.at(0, 2), 0);
  EXPECT_EQ(sim.at(1, 2), 0);
}

TEST(BaselineSimilarityTest, SingleRequestHasNoPairs) {
  EXPECT_EQ(
      baseline_similarity(scenario_of({ServiceClass::kMmtc})).pair_count(), 0u);
}

TEST(LlmSimilarityTest, ArchetypeMockMatchesBaseline) {
  const auto s = generated(30);
  auto mock = make_mock_provider("greedy-by-class", s);
  SimilarityOptions opts;
  opts.batch_size = 17;
  const auto sim = llm_similarity(s, *mock, opts);
  EXPECT_EQ(sim.source(), SimilaritySource::kLlm);
  EXPECT_EQ(sim.packed(), baseline_similarity(s).packed());
  // ceil(435 / 17) batches, nothing re-asked.
  EXPECT_EQ(mock->calls(), 26u);
}

TEST(LlmSimilarityTest, MalformedPairFallsBackToZero) {
  std::vector<ServiceClass> classes(8, ServiceClass::kEmbb);
  const auto s = scenario_of(classes);
  auto mock = make_mock_provider("greedy-by-class", s);
  mock->set_malformed_pairs({{2, 5}});
  SimilarityOptions opts;
  opts.max_retries = 2;
  const auto sim = llm_similarity(s, *mock, opts);
  EXPECT_EQ(sim.at(2, 5), 0);
  EXPECT_EQ(sim.similar_pair_count(), 27u);
  // One full batch plus two single-pair retries.
  EXPECT_EQ(mock->calls(), 3u);
  EXPECT_EQ(mock->pairs_judged(), 28u + 2u);
}

TEST(LlmSimilarityTest, FallbackOne) {
  const auto s = scenario_of(
      {ServiceClass::kEmbb, ServiceClass::kUrllc, ServiceClass::kMmtc});
  auto mock = make_mock_provider("greedy-by-class", s);
  mock->set_malformed_pairs({{0, 2}});
  SimilarityOptions opts;
  opts.fallback = 1;
  opts.max_retries = 0;
  const auto sim = llm_similarity(s, *mock, opts);
  EXPECT_EQ(sim.at(0, 2), 1);
  EXPECT_EQ(sim.at(0, 1), 0);
}

TEST(LlmSimilarityTest, TenRequestsAskFortyFivePairs) {
  const auto s = generated(10);
  auto mock = make_mock_provider("greedy-by-class", s);
  llm_similarity(s, *mock);
  EXPECT_EQ(mock->pairs_judged(), 45u);
  EXPECT_EQ(mock->calls(), 1u);
}

TEST(LlmSimilarityTest, NoFallbackRaises) {
  const auto s = generated(6);
  auto mock = make_mock_provider("greedy-by-class", s);
  mock->set_malformed_pairs({{1, 3}});
  SimilarityOptions opts;
  opts.fallback = std::nullopt;
  EXPECT_THROW(llm_similarity(s, *mock, opts), GatewayError);
}

TEST(LlmSimilarityTest, TransportErrorsRetriedThenFallback) {
  const auto s = scenario_of({ServiceClass::kEmbb, ServiceClass::kEmbb});
  ScriptedProvider p;
  p.push_error("down");
  p.push_response("```\n0@1@1\n```");
  EXPECT_EQ(llm_similarity(s, p).at(0, 1), 1);

  ScriptedProvider dead;
  dead.push_error("down");
  EXPECT_EQ(llm_similarity(s, dead).at(0, 1), 0);
  EXPECT_EQ(dead.requests().size(), 3u);
}

TEST(LlmSimilarityTest, ParallelMatchesSerial) {
  const auto s = generated(25, 8);
  auto a = make_mock_provider("greedy-by-class", s);
  auto b = make_mock_provider("greedy-by-class", s);
  SimilarityOptions serial;
  serial.batch_size = 7;
  serial.parallelism = 1;
  auto parallel = serial;
  parallel.parallelism = 8;
  EXPECT_EQ(llm_similarity(s, *a, serial), llm_similarity(s, *b, parallel));
}

TEST(MatrixAgreementTest, Examples) {
  Rng rng(1);
  const auto a = testing::random_similarity(rng, 10, 0.5);
  EXPECT_DOUBLE_EQ(matrix_agreement(a, a), 1.0);

  const SimilarityMatrix x(3, SimilaritySource::kExplicit, {1, 0, 1});
  const SimilarityMatrix y(3, SimilaritySource::kExplicit, {0, 1, 0});
  EXPECT_DOUBLE_EQ(matrix_agreement(x, y), 0.0);

  auto b = a;
  for (std::size_t k = 0; k < 9; ++k) {
    // Flip the first nine packed pairs: (0,1)..(0,9).
    b = b.with_value(0, k + 1, 1 - a.at(0, k + 1));
  }
  EXPECT_NEAR(matrix_agreement(a, b), 36.0 / 45.0, 1e-12);
  EXPECT_NEAR(matrix_agreement(a, b), 0.8, 1e-12);
}

TEST(MatrixAgreementTest, SizeMismatch) {
  EXPECT_THROW(matrix_agreement(SimilarityMatrix(3, SimilaritySource::kLlm),
                                SimilarityMatrix(4, SimilaritySource::kLlm)),
               DimensionMismatch);
  EXPECT_DOUBLE_EQ(
      matrix_agreement(SimilarityMatrix(1, SimilaritySource::kLlm),
                       SimilarityMatrix(1, SimilaritySource::kLlm)),
      1.0);
}

TEST(SimilarityJsonTest, RoundTrip) {
  Rng rng(5);
  const auto sim = testing::random_similarity(rng, 12, 0.3);
  EXPECT_EQ(similarity_from_json(similarity_to_json(sim)), sim);
}

TEST(SimilarityJsonTest, Errors) {
  using nlohmann::json;
  const json ok = {{"n", 3}, {"source", "explicit"}, {"pairs", {{0, 2, 1}}}};
  const auto sim = similarity_from_json(ok);
  EXPECT_EQ(sim.at(0, 2), 1);
  EXPECT_EQ(sim.at(0, 1), 0);

  auto bad = ok;
  bad["pairs"] = {{0, 3, 1}};
  EXPECT_THROW(similarity_from_json(bad), SchemaViolation);
  bad["pairs"] = {{0, 1, 2}};
  EXPECT_THROW(similarity_from_json(bad), SchemaViolation);
  bad["pairs"] = {{0, 1, 1}, {1, 0, 0}};
  EXPECT_THROW(similarity_from_json(bad), SchemaViolation);
  bad = ok;
  bad["source"] = "oracle";
  EXPECT_THROW(similarity_from_json(bad), SchemaViolation);
}

}  // namespace
}  // namespace slicekit
