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

#include <atomic>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicekit/domain.hpp"

namespace slicekit {

// Transport-level failure talking to a chat provider.
class GatewayError : public Error {
 public:
  using Error::Error;
};

// Provider configuration that cannot work, e.g. the API key variable is unset.
class ProviderConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kDefaultApiKeyEnv = "SLICEKIT_API_KEY";
inline constexpr const char* kSystemPrompt =
    "You are a network slicing assistant.";

struct ProviderConfig {
  std::string endpoint_url = "http://127.0.0.1:8080/v1/chat/completions";
  std::string model_name = "default";
  std::string api_key_env_var = kDefaultApiKeyEnv;
  double temperature = 0.8;
  int max_retries = 2;
  int request_timeout_ms = 60000;
  int parallelism_bound = 4;

  // Throws ProviderConfigError.
  void validate() const;
};

struct ChatRequest {
  std::string system;
  std::string user;
  double temperature = 0.8;
};

// One chat-completion round trip. Implementations must be safe to call from
// several threads at once.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  // Throws GatewayError on transport failure.
  virtual std::string chat(const ChatRequest& request) = 0;
};

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::uint64_t shuffle_seed = 0;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// --- zero-shot assignment --------------------------------------------------

// Request listing order used for `shuffle_seed`: a Fisher-Yates permutation
// of 0..n-1.
std::vector<std::size_t> shuffled_order(std::size_t n,
                                        std::uint64_t shuffle_seed);

PromptBundle render_assignment_prompt(const Scenario& scenario,
                                      std::uint64_t shuffle_seed);

// Appended to the user text when a response could not be parsed.
inline constexpr const char* kFormatReminder =
    "Reminder: reply with a single block enclosed in triple backticks that "
    "contains one line slice_id@request_id@allocated_units per request, and "
    "nothing else.";

class ParseError : public Error {
 public:
  enum class Kind {
    kNoCodeBlock,
    kBadFieldCount,
    kBadInteger,
    kDuplicateRequest
  };

  ParseError(Kind kind, std::size_t line, std::string id, std::string message)
      : Error(std::move(message)),
        kind_(kind),
        line_(line),
        id_(std::move(id)) {}

  Kind kind() const { return kind_; }
  // 1-based line number inside the code block; 0 when not line-specific.
  std::size_t line() const { return line_; }
  // Offending request id for kDuplicateRequest.
  const std::string& id() const { return id_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::string id_;
};

std::string_view to_string(ParseError::Kind kind);

// Contents of the first ``` fenced block (text after the opening fence line,
// up to the closing fence), or nullopt if there is no complete block.
std::optional<std::string_view> extract_code_block(std::string_view text);

// Strict reader for `slice_id@request_id@units` lines. Throws ParseError.
Assignment parse_assignment_response(std::string_view text);

// True when every id can pass through the wire format unchanged.
bool wire_serializable(const Assignment& assignment);
// Inverse of parse_assignment_response. Throws DomainError if an id holds
// '@', a line break, a backtick fence or surrounding whitespace.
std::string serialize_assignment(const Assignment& assignment);

// Render, call, parse. A parse failure or transport error is retried with
// the format reminder appended, up to config.max_retries extra attempts; the
// last error is rethrown. The result is not validated.
Assignment zero_shot_assign(const Scenario& scenario, ChatProvider& provider,
                            std::uint64_t shuffle_seed,
                            const ProviderConfig& config = {});

// --- pairwise similarity ---------------------------------------------------

inline constexpr const char* kPairsHeader = "Pairs to judge:";

struct SimilarityJudgment {
  std::size_t i;
  std::size_t j;
  int value;
};

// Lists only the requests the pairs reference, keyed by their scenario
// index. Throws std::invalid_argument for an empty or out-of-range pair list.
PromptBundle render_similarity_prompt(
    const Scenario& scenario,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// Lenient reader for `i@j@v` lines in the first code block. Lines that do not
// parse, or whose value is not 0 or 1, are dropped. Pairs are normalized to
// i < j. Returns an empty list when there is no code block.
std::vector<SimilarityJudgment> parse_similarity_response(
    std::string_view text);

// --- providers ---------------------------------------------------------------

// Deterministic rule-based stand-ins for a real model. They read the request
// ids (or pair indices) out of the prompt, so their output follows the
// prompt's listing order, and look up ground truth in the scenario they were
// built with. Similarity prompts are answered by archetype equality.
class RuleBasedMockProvider : public ChatProvider {
 public:
  enum class Strategy {
    kGreedyByClass,  // slice whose class matches the request's archetype
    kTruncator,      // greedy-by-class, but drops the last listed request
    kCapacityBlind,  // most latency-tolerant compatible slice, ignoring load
  };

  RuleBasedMockProvider(Scenario scenario, Strategy strategy);

  // Similarity answers for these pairs (i < j) come back malformed.
  void set_malformed_pairs(std::set<std::pair<std::size_t, std::size_t>> p) {
    malformed_pairs_ = std::move(p);
  }

  std::string chat(const ChatRequest& request) override;

  std::size_t calls() const { return calls_.load(); }
  std::size_t pairs_judged() const { return pairs_judged_.load(); }

 private:
  std::string answer_assignment(const std::string& user) const;
  std::string answer_similarity(const std::string& user);

  Scenario scenario_;
  Strategy strategy_;
  std::set<std::pair<std::size_t, std::size_t>> malformed_pairs_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> pairs_judged_{0};
};

// Names accepted by make_mock_provider / the --mock flag.
std::vector<std::string> mock_provider_names();
// Throws std::invalid_argument for an unknown name.
std::unique_ptr<RuleBasedMockProvider> make_mock_provider(
    std::string_view name, const Scenario& scenario);

// Returns queued responses in order; when the queue runs dry the last one
// repeats. Queued errors are thrown as GatewayError.
class ScriptedProvider : public ChatProvider {
 public:
  void push_response(std::string text);
  void push_error(std::string message);
  std::string chat(const ChatRequest& request) override;

  std::vector<ChatRequest> requests() const;

 private:
  struct Item {
    bool is_error;
    std::string text;
  };
  mutable std::mutex mu_;
  std::deque<Item> queue_;
  std::optional<Item> last_;
  std::vector<ChatRequest> seen_;
};

struct TranscriptEntry {
  std::string system;
  std::string user;
  std::string response;
};

// Replays recorded exchanges, matched on the exact (system, user) text.
// Unknown prompts raise GatewayError.
class TranscriptProvider : public ChatProvider {
 public:
  explicit TranscriptProvider(std::vector<TranscriptEntry> entries)
      : entries_(std::move(entries)) {}
  static TranscriptProvider load(const std::filesystem::path& path);

  std::string chat(const ChatRequest& request) override;

 private:
  std::vector<TranscriptEntry> entries_;
};

// Forwards to another provider and keeps every exchange for later replay.
class RecordingProvider : public ChatProvider {
 public:
  explicit RecordingProvider(ChatProvider& inner) : inner_(inner) {}
  std::string chat(const ChatRequest& request) override;

  std::vector<TranscriptEntry> entries() const;
  void save(const std::filesystem::path& path) const;

 private:
  ChatProvider& inner_;
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
};

}  // namespace slicekit
