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

#include "slicekit/llm_gateway.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "slicekit/evaluation.hpp"
#include "slicekit/http_provider.hpp"
#include "slicekit/scenario.hpp"
#include "test_support.hpp"

namespace slicekit {
namespace {

using testing::make_request;
using testing::make_slice;

Scenario generated(std::int64_t n, std::uint64_t seed = 2) {
  auto c = GeneratorConfig::defaults();
  c.seed = seed;
  c.n_requests = n;
  return generate(c);
}

std::vector<std::string> section(const std::string& text,
                                 const std::string& header) {
  std::vector<std::string> out;
  std::istringstream in(text.substr(text.find(header) + header.size() + 1));
  for (std::string line; std::getline(in, line) && !line.empty();)
    out.push_back(line);
  return out;
}

ParseError::Kind parse_error_kind(const std::string& text) {
  try {
    parse_assignment_response(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError::Kind::kNoCodeBlock;
}

TEST(ParseAssignmentTest, ExampleBlock) {
  const auto a = parse_assignment_response(
      "```\nSliceA@Request1@5\nSliceB@Request2@10\n```");
  EXPECT_EQ(
      a, Assignment({{"SliceA", "Request1", 5}, {"SliceB", "Request2", 10}}));
}

TEST(ParseAssignmentTest, ToleratesProseSpacesAndCrlf) {
  const auto a = parse_assignment_response(
      "Here you go:\r\n```csv\r\nSliceA @ Request1 @ 5\r\n\r\n```\r\nThanks");
  EXPECT_EQ(a, Assignment({{"SliceA", "Request1", 5}}));
  EXPECT_TRUE(parse_assignment_response("```\n```").empty());
}

TEST(ParseAssignmentTest, ErrorKinds) {
  using K = ParseError::Kind;
  EXPECT_EQ(parse_error_kind("SliceA@Request1@5"), K::kNoCodeBlock);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@5\n"), K::kNoCodeBlock);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1\n```"), K::kBadFieldCount);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@5@6\n```"),
            K::kBadFieldCount);
  EXPECT_EQ(parse_error_kind("```\n@Request1@5\n```"), K::kBadFieldCount);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@five\n```"), K::kBadInteger);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@-5\n```"), K::kBadInteger);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@2.5\n```"), K::kBadInteger);
  EXPECT_EQ(parse_error_kind("```\nSliceA@Request1@99999999999999999999\n```"),
            K::kBadInteger);
}

TEST(ParseAssignmentTest, DuplicateNamesRequestAndLine) {
  try {
    parse_assignment_response(
        "```\nSliceA@Request1@5\nSliceB@Request2@1\nSliceB@Request1@5\n```");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::kDuplicateRequest);
    EXPECT_EQ(e.id(), "Request1");
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseAssignmentTest, RoundTripRandomAssignments) {
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.:/# ";
  Rng rng(1000);
  auto random_id = [&] {
    std::string id;
    const auto len = rng.uniform_int(1, 12);
    for (std::int64_t k = 0; k < len; ++k)
      id += alphabet[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
    if (id.front() == ' ') id.front() = 'x';
    if (id.back() == ' ') id.back() = 'y';
    return id;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<AssignmentRow> rows;
    std::set<std::string> used;
    const auto n = rng.uniform_int(0, 20);
    for (std::int64_t k = 0; k < n; ++k) {
      auto req = random_id();
      if (!used.insert(req).second) continue;
      rows.push_back({random_id(), req, rng.uniform_int(0, 1'000'000)});
    }
    const Assignment a(rows);
    ASSERT_TRUE(wire_serializable(a));
    ASSERT_EQ(parse_assignment_response(serialize_assignment(a)), a)
        << serialize_assignment(a);
  }
}

TEST(ParseAssignmentTest, UnserializableIds) {
  EXPECT_FALSE(wire_serializable(Assignment({{"Slice@A", "r", 1}})));
  EXPECT_FALSE(wire_serializable(Assignment({{"A", " r", 1}})));
  EXPECT_THROW(serialize_assignment(Assignment({{"A", "r\n", 1}})),
               DomainError);
}

TEST(ExtractCodeBlockTest, FirstBlockWins) {
  EXPECT_EQ(extract_code_block("a ```\nx\n``` b ```\ny\n```"), "x\n");
  EXPECT_FALSE(extract_code_block("no fences").has_value());
}

TEST(AssignmentPromptTest, ShuffleOnlyReordersRequests) {
  const auto s = generated(12);
  const auto a = render_assignment_prompt(s, 1);
  const auto b = render_assignment_prompt(s, 2);
  EXPECT_EQ(a.system_text, b.system_text);
  EXPECT_NE(a.user_text, b.user_text);
  auto ra = section(a.user_text, "User Requests:");
  auto rb = section(b.user_text, "User Requests:");
  EXPECT_NE(ra, rb);
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  EXPECT_EQ(ra, rb);
  const auto head = a.user_text.substr(0, a.user_text.find("User Requests:"));
  EXPECT_EQ(head, b.user_text.substr(0, b.user_text.find("User Requests:")));
}

TEST(AssignmentPromptTest, Deterministic) {
  const auto s = generated(12);
  EXPECT_EQ(render_assignment_prompt(s, 9), render_assignment_prompt(s, 9));
}

TEST(AssignmentPromptTest, LineCounts) {
  const auto s = generated(2);
  const auto p = render_assignment_prompt(s, 0);
  const auto slices = section(p.user_text, "Slice Capacities:");
  const auto requests = section(p.user_text, "User Requests:");
  EXPECT_EQ(slices.size(), 3u);
  EXPECT_EQ(requests.size(), 2u);
  EXPECT_NE(p.user_text.find("SliceA@Request1@5"), std::string::npos);
}

TEST(ShuffledOrderTest, IsPermutation) {
  auto order = shuffled_order(50, 123);
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);
  EXPECT_TRUE(shuffled_order(0, 5).empty());
}

TEST(SimilarityPromptTest, PairLinesAndInstruction) {
  const auto s = generated(10);
  const auto one = render_similarity_prompt(s, {{3, 1}});
  EXPECT_EQ(section(one.user_text, kPairsHeader),
            (std::vector<std::string>{"1@3"}));
  EXPECT_NE(one.user_text.find("Output exactly 1 line,"), std::string::npos);

  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) all.emplace_back(i, j);
  const auto p = render_similarity_prompt(s, all);
  EXPECT_EQ(section(p.user_text, kPairsHeader).size(), 45u);
  EXPECT_NE(p.user_text.find("Output exactly 45 lines"), std::string::npos);

  EXPECT_THROW(render_similarity_prompt(s, {}), std::invalid_argument);
  EXPECT_THROW(render_similarity_prompt(s, {{0, 10}}), std::invalid_argument);
}

TEST(SimilarityResponseTest, LenientParse) {
  const auto got = parse_similarity_response(
      "```\n0@1@1\n3@2@0\n4@5@maybe\n6@7@2\njunk\n8@9@1\n```");
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[1].i, 2u);
  EXPECT_EQ(got[1].j, 3u);
  EXPECT_EQ(got[1].value, 0);
  EXPECT_TRUE(parse_similarity_response("0@1@1").empty());
}

TEST(ZeroShotTest, GreedyCoversEveryRequest) {
  const auto s = generated(30);
  auto mock = make_mock_provider("greedy-by-class", s);
  const auto a = zero_shot_assign(s, *mock, 7);
  EXPECT_EQ(a.size(), 30u);
  EXPECT_DOUBLE_EQ(completeness(s, a), 100.0);
  for (const auto& row : a.rows()) {
    const auto& r = s.requests()[*s.request_index(row.request_id)];
    EXPECT_EQ(s.slices()[*s.slice_index(row.slice_id)].slice_class,
              r.archetype);
    EXPECT_EQ(row.allocated_units, r.demand);
  }
}

TEST(ZeroShotTest, TruncatorDropsOne) {
  const auto s = generated(30);
  auto mock = make_mock_provider("truncator", s);
  const auto a = zero_shot_assign(s, *mock, 7);
  EXPECT_EQ(a.size(), 29u);
  EXPECT_LT(completeness(s, a), 100.0);
}

TEST(ZeroShotTest, CapacityBlindOverfills) {
  const auto s = generated(30);
  auto mock = make_mock_provider("capacity-blind", s);
  const auto report = validate(s, zero_shot_assign(s, *mock, 7));
  EXPECT_GE(report.count<violation::CapacityExceeded>(), 1u);
  EXPECT_EQ(report.count<violation::LatencyMismatch>(), 0u);
}

TEST(ZeroShotTest, GarbageExhaustsRetries) {
  const auto s = generated(3);
  ScriptedProvider p;
  p.push_response("I cannot help with that.");
  ProviderConfig cfg;
  cfg.max_retries = 2;
  try {
    zero_shot_assign(s, p, 0, cfg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::kNoCodeBlock);
  }
  const auto seen = p.requests();
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen[0].user.find(kFormatReminder), std::string::npos);
  EXPECT_NE(seen[1].user.find(kFormatReminder), std::string::npos);
  EXPECT_EQ(seen[2].user, seen[1].user);
  EXPECT_DOUBLE_EQ(seen[0].temperature, 0.8);
}

TEST(ZeroShotTest, RecoversAfterBadReply) {
  const auto s = Scenario({make_slice("SliceA", ServiceClass::kEmbb, 9, 1)},
                          {make_request("Request1", 2, 5)});
  ScriptedProvider p;
  p.push_error("timeout");
  p.push_response("```\nSliceA@Request1\n```");
  p.push_response("```\nSliceA@Request1@2\n```");
  EXPECT_EQ(zero_shot_assign(s, p, 0).size(), 1u);
}

TEST(MockProviderTest, UnknownName) {
  EXPECT_THROW(make_mock_provider("oracle", generated(1)),
               std::invalid_argument);
  EXPECT_EQ(mock_provider_names().size(), 3u);
}

TEST(TranscriptTest, RecordThenReplay) {
  const auto s = generated(8);
  auto mock = make_mock_provider("greedy-by-class", s);
  RecordingProvider rec(*mock);
  const auto first = zero_shot_assign(s, rec, 3);
  const auto path =
      std::filesystem::temp_directory_path() / "slicekit_transcript.json";
  rec.save(path);

  auto replay = TranscriptProvider::load(path);
  EXPECT_EQ(zero_shot_assign(s, replay, 3), first);
  ProviderConfig no_retry;
  no_retry.max_retries = 0;
  EXPECT_THROW(zero_shot_assign(s, replay, 4, no_retry), GatewayError);
}

TEST(ProviderConfigTest, Validate) {
  ProviderConfig c;
  EXPECT_NO_THROW(c.validate());
  c.temperature = -1;
  EXPECT_THROW(c.validate(), ProviderConfigError);
  c = {};
  c.parallelism_bound = 0;
  EXPECT_THROW(c.validate(), ProviderConfigError);
}

TEST(HttpProviderTest, MissingKeyNamesVariable) {
  ProviderConfig c;
  c.api_key_env_var = "SLICEKIT_TEST_KEY_THAT_IS_UNSET";
  ::unsetenv(c.api_key_env_var.c_str());
  try {
    HttpChatProvider p(c);
    FAIL();
  } catch (const ProviderConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("SLICEKIT_TEST_KEY_THAT_IS_UNSET"),
              std::string::npos);
  }
}

TEST(HttpProviderTest, TalksToLocalServer) {
  httplib::Server server;
  nlohmann::json seen;
  std::string auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req,
                                          httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    nlohmann::json reply = {
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", "```\n```"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("SLICEKIT_TEST_KEY", "secret", 1);
  ProviderConfig c;
  c.api_key_env_var = "SLICEKIT_TEST_KEY";
  c.model_name = "tiny";
  c.temperature = 0.5;
  c.endpoint_url =
      "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  HttpChatProvider p(c);
  EXPECT_EQ(p.chat({"sys", "hello", 0.5}), "```\n```");
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(seen["model"], "tiny");
  EXPECT_DOUBLE_EQ(seen["temperature"].get<double>(), 0.5);
  ASSERT_EQ(seen["messages"].size(), 2u);
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][1]["content"], "hello");

  c.endpoint_url = "http://127.0.0.1:" + std::to_string(port) + "/broken";
  HttpChatProvider broken(c);
  EXPECT_THROW(broken.chat({"sys", "hello", 0.5}), GatewayError);

  server.stop();
  t.join();
}

}  // namespace
}  // namespace slicekit
