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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "slicekit/rng.hpp"
#include "slicekit/scenario.hpp"

namespace slicekit {

namespace {

constexpr std::string_view kFence = "```";

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
           c == '\f';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view block) {
  std::vector<std::string_view> lines = split(block, '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  return lines;
}

// Unsigned decimal without sign, exponent or fraction.
template <typename Int>
std::optional<Int> parse_unsigned(std::string_view s) {
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool is_wire_id(std::string_view id) {
  return !id.empty() && trim(id) == id &&
         id.find_first_of("@\r\n") == std::string_view::npos &&
         id.find(kFence) == std::string_view::npos;
}

// Section of `text` that follows a line equal to `header`, up to the next
// blank line.
std::vector<std::string_view> section_lines(std::string_view text,
                                            std::string_view header) {
  std::vector<std::string_view> out;
  bool inside = false;
  for (std::string_view line : lines_of(text)) {
    if (!inside) {
      inside = trim(line) == header;
      continue;
    }
    if (trim(line).empty()) {
      if (!out.empty()) break;
      continue;
    }
    out.push_back(line);
  }
  return out;
}

}  // namespace

void ProviderConfig::validate() const {
  if (!std::isfinite(temperature) || temperature < 0 || temperature > 2)
    throw ProviderConfigError("temperature must be within [0, 2]");
  if (max_retries < 0) throw ProviderConfigError("max_retries must be >= 0");
  if (request_timeout_ms <= 0)
    throw ProviderConfigError("request_timeout_ms must be > 0");
  if (parallelism_bound < 1)
    throw ProviderConfigError("parallelism_bound must be >= 1");
}

std::vector<std::size_t> shuffled_order(std::size_t n,
                                        std::uint64_t shuffle_seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(shuffle_seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto k = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(order[i - 1], order[k]);
  }
  return order;
}

PromptBundle render_assignment_prompt(const Scenario& scenario,
                                      std::uint64_t shuffle_seed) {
  std::ostringstream u;
  u << "Network slicing is the process of partitioning a physical mobile "
       "network into multiple virtual slices to meet diverse service "
       "requirements. For example, eMBB slices provide high bandwidth for "
       "video streaming, URLLC slices offer ultra-low latency for "
       "mission-critical services, and mMTC slices support massive IoT "
       "connectivity. Telecom operators typically perform slice resource "
       "allocation manually.\n\n"
       "Assign each of the following user service requests to one of the "
       "available network slices based on these constraints:\n"
       "1. The total resource demand of all requests in a slice must not "
       "exceed that slice’s capacity.\n"
       "2. No new slices should be added (use only the provided slices).\n"
       "3. A request’s latency requirement must be satisfied by the "
       "slice’s latency (assign each request only to a slice with equal "
       "or lower latency than it requires).\n"
       "4. All requests must be assigned to a slice (no request left "
       "unassigned).\n\n"
       "The output should be a list of assignments in CSV format (as a data "
       "frame) enclosed in triple backticks, using the \"@\" symbol as a "
       "delimiter. Each line should be:\n\n"
       "slice_id @ request_id @ allocated_units\n\n"
       "(representing that a given request is allocated to a particular "
       "slice along with the resource units it will consume).\n\n"
       "Example output format (for illustration, assuming slice names and "
       "request IDs):\n\n"
       "```\nSliceA@Request1@5\nSliceB@Request2@10\nSliceA@Request3@8\n...\n"
       "```\n\n"
       "Below are the available slices and their capacities, followed by the "
       "list of user requests with their demands and latency requirements:\n\n"
       "Slice Capacities:\n";
  for (const Slice& s : scenario.slices())
    u << "- " << s.id << ": capacity " << s.capacity << " units, latency "
      << format_number(s.latency_guarantee_ms) << " ms\n";
  u << "\nUser Requests:\n";
  for (std::size_t i : shuffled_order(scenario.request_count(), shuffle_seed)) {
    const Request& r = scenario.requests()[i];
    u << "- " << r.id << ": demand " << r.demand
      << " units, latency requirement " << format_number(r.latency_req_ms)
      << " ms, service: " << r.description << "\n";
  }
  u << "\nEnsure that your response strictly follows the format and "
       "constraints above, and nothing else.";
  return PromptBundle{kSystemPrompt, u.str(), shuffle_seed};
}

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kNoCodeBlock:
      return "NoCodeBlock";
    case ParseError::Kind::kBadFieldCount:
      return "BadFieldCount";
    case ParseError::Kind::kBadInteger:
      return "BadInteger";
    case ParseError::Kind::kDuplicateRequest:
      return "DuplicateRequest";
  }
  return "?";
}

std::optional<std::string_view> extract_code_block(std::string_view text) {
  const std::size_t open = text.find(kFence);
  if (open == std::string_view::npos) return std::nullopt;
  std::size_t body = open + kFence.size();
  const std::size_t close_inline = text.find(kFence, body);
  const std::size_t eol = text.find('\n', body);
  if (eol == std::string_view::npos || close_inline < eol) {
    // Single-line block: ```...```
    if (close_inline == std::string_view::npos) return std::nullopt;
    return text.substr(body, close_inline - body);
  }
  body = eol + 1;  // skip an optional info string such as "csv"
  const std::size_t close = text.find(kFence, body);
  if (close == std::string_view::npos) return std::nullopt;
  return text.substr(body, close - body);
}

Assignment parse_assignment_response(std::string_view text) {
  const auto block = extract_code_block(text);
  if (!block)
    throw ParseError(ParseError::Kind::kNoCodeBlock, 0, "",
                     "response has no triple-backtick block");

  std::vector<AssignmentRow> rows;
  std::set<std::string, std::less<>> seen;
  const auto lines = lines_of(*block);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (trim(lines[n]).empty()) continue;
    const auto fields = split(lines[n], '@');
    if (fields.size() != 3 || trim(fields[0]).empty() ||
        trim(fields[1]).empty())
      throw ParseError(ParseError::Kind::kBadFieldCount, line_no, "",
                       "line " + std::to_string(line_no) +
                           ": expected slice_id@request_id@units");
    const auto units = parse_unsigned<std::int64_t>(trim(fields[2]));
    if (!units)
      throw ParseError(ParseError::Kind::kBadInteger, line_no, "",
                       "line " + std::to_string(line_no) +
                           ": units must be a non-negative integer, got '" +
                           std::string(trim(fields[2])) + "'");
    std::string request(trim(fields[1]));
    if (!seen.insert(request).second)
      throw ParseError(ParseError::Kind::kDuplicateRequest, line_no, request,
                       "line " + std::to_string(line_no) + ": request '" +
                           request + "' assigned more than once");
    rows.push_back({std::string(trim(fields[0])), std::move(request), *units});
  }
  return Assignment(std::move(rows));
}

bool wire_serializable(const Assignment& assignment) {
  return std::all_of(assignment.rows().begin(), assignment.rows().end(),
                     [](const AssignmentRow& r) {
                       return is_wire_id(r.slice_id) &&
                              is_wire_id(r.request_id);
                     });
}

std::string serialize_assignment(const Assignment& assignment) {
  std::string out = "```\n";
  for (const AssignmentRow& r : assignment.rows()) {
    if (!is_wire_id(r.slice_id) || !is_wire_id(r.request_id))
      throw DomainError("assignment row (" + r.slice_id + ", " + r.request_id +
                        ") cannot be written in the wire format");
    out += r.slice_id + "@" + r.request_id + "@" +
           std::to_string(r.allocated_units) + "\n";
  }
  out += "```\n";
  return out;
}

Assignment zero_shot_assign(const Scenario& scenario, ChatProvider& provider,
                            std::uint64_t shuffle_seed,
                            const ProviderConfig& config) {
  config.validate();
  const PromptBundle prompt = render_assignment_prompt(scenario, shuffle_seed);
  ChatRequest request{prompt.system_text, prompt.user_text, config.temperature};
  for (int attempt = 0;; ++attempt) {
    try {
      return parse_assignment_response(provider.chat(request));
    } catch (const ParseError&) {
      if (attempt >= config.max_retries) throw;
    } catch (const GatewayError&) {
      if (attempt >= config.max_retries) throw;
    }
    if (attempt == 0) request.user += "\n\n" + std::string(kFormatReminder);
  }
}

PromptBundle render_similarity_prompt(
    const Scenario& scenario,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("similarity prompt needs at least one pair");
  std::set<std::size_t> listed;
  for (auto [i, j] : pairs) {
    if (i >= scenario.request_count() || j >= scenario.request_count() ||
        i == j)
      throw std::invalid_argument("similarity pair out of range");
    listed.insert(i);
    listed.insert(j);
  }

  std::ostringstream u;
  u << "Decide, for each pair of user service requests listed below, whether "
       "the two requests are similar enough that they should be served by "
       "the same network slice (for example, both are video streams, or both "
       "are latency-critical control traffic). Answer 1 if they are similar "
       "and 0 if they are not.\n\n"
       "Requests:\n";
  for (std::size_t k : listed) {
    const Request& r = scenario.requests()[k];
    u << "[" << k << "] " << r.id << ": " << r.description << " (demand "
      << r.demand << " units, latency requirement "
      << format_number(r.latency_req_ms) << " ms)\n";
  }
  u << "\n" << kPairsHeader << "\n";
  for (auto [i, j] : pairs)
    u << std::min(i, j) << "@" << std::max(i, j) << "\n";
  u << "\nOutput exactly " << pairs.size()
    << (pairs.size() == 1 ? " line" : " lines")
    << ", one per pair, in the form i@j@1 or i@j@0 using the request numbers "
       "exactly as in the pair list, enclosed in triple backticks, and "
       "nothing else.";
  return PromptBundle{kSystemPrompt, u.str(), 0};
}

std::vector<SimilarityJudgment> parse_similarity_response(
    std::string_view text) {
  std::vector<SimilarityJudgment> out;
  const auto block = extract_code_block(text);
  if (!block) return out;
  for (std::string_view line : lines_of(*block)) {
    const auto fields = split(line, '@');
    if (fields.size() != 3) continue;
    const auto i = parse_unsigned<std::size_t>(trim(fields[0]));
    const auto j = parse_unsigned<std::size_t>(trim(fields[1]));
    const std::string_view v = trim(fields[2]);
    if (!i || !j || *i == *j || (v != "0" && v != "1")) continue;
    out.push_back({std::min(*i, *j), std::max(*i, *j), v == "1" ? 1 : 0});
  }
  return out;
}

// --- mocks -------------------------------------------------------------------

RuleBasedMockProvider::RuleBasedMockProvider(Scenario scenario,
                                             Strategy strategy)
    : scenario_(std::move(scenario)), strategy_(strategy) {}

std::string RuleBasedMockProvider::chat(const ChatRequest& request) {
  ++calls_;
  if (request.user.find(kPairsHeader) != std::string::npos)
    return answer_similarity(request.user);
  return answer_assignment(request.user);
}

std::string RuleBasedMockProvider::answer_assignment(
    const std::string& user) const {
  std::vector<std::size_t> listed;
  for (std::string_view line : section_lines(user, "User Requests:")) {
    line = trim(line);
    if (line.substr(0, 2) != "- ") continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    if (auto i = scenario_.request_index(trim(line.substr(2, colon - 2))))
      listed.push_back(*i);
  }
  if (strategy_ == Strategy::kTruncator && !listed.empty()) listed.pop_back();

  const auto mask = latency_feasibility_mask(scenario_);
  const auto& slices = scenario_.slices();
  std::ostringstream out;
  out << "Here is the allocation:\n\n```\n";
  for (std::size_t i : listed) {
    const Request& r = scenario_.requests()[i];
    std::size_t pick = 0;
    if (strategy_ == Strategy::kCapacityBlind) {
      // Loosest latency guarantee that still serves the request.
      for (std::size_t m = 0; m < slices.size(); ++m)
        if (mask(i, m) &&
            (!mask(i, pick) || slices[m].latency_guarantee_ms >
                                   slices[pick].latency_guarantee_ms))
          pick = m;
    } else {
      auto it = std::find_if(slices.begin(), slices.end(), [&](const Slice& s) {
        return s.slice_class == r.archetype;
      });
      if (it != slices.end()) {
        pick = static_cast<std::size_t>(it - slices.begin());
      } else {
        while (pick + 1 < slices.size() && !mask(i, pick)) ++pick;
      }
    }
    out << slices[pick].id << "@" << r.id << "@" << r.demand << "\n";
  }
  out << "```\n";
  return out.str();
}

std::string RuleBasedMockProvider::answer_similarity(const std::string& user) {
  std::ostringstream out;
  out << "```\n";
  for (std::string_view line : section_lines(user, kPairsHeader)) {
    const auto fields = split(trim(line), '@');
    if (fields.size() != 2) continue;
    const auto i = parse_unsigned<std::size_t>(fields[0]);
    const auto j = parse_unsigned<std::size_t>(fields[1]);
    if (!i || !j || *i >= scenario_.request_count() ||
        *j >= scenario_.request_count())
      continue;
    ++pairs_judged_;
    if (malformed_pairs_.count({std::min(*i, *j), std::max(*i, *j)})) {
      out << *i << "@" << *j << "@maybe\n";
      continue;
    }
    const bool same = scenario_.requests()[*i].archetype ==
                      scenario_.requests()[*j].archetype;
    out << *i << "@" << *j << "@" << (same ? 1 : 0) << "\n";
  }
  out << "```\n";
  return out.str();
}

std::vector<std::string> mock_provider_names() {
  return {"greedy-by-class", "truncator", "capacity-blind"};
}

std::unique_ptr<RuleBasedMockProvider> make_mock_provider(
    std::string_view name, const Scenario& scenario) {
  using S = RuleBasedMockProvider::Strategy;
  if (name == "greedy-by-class")
    return std::make_unique<RuleBasedMockProvider>(scenario, S::kGreedyByClass);
  if (name == "truncator")
    return std::make_unique<RuleBasedMockProvider>(scenario, S::kTruncator);
  if (name == "capacity-blind")
    return std::make_unique<RuleBasedMockProvider>(scenario, S::kCapacityBlind);
  throw std::invalid_argument("unknown mock provider '" + std::string(name) +
                              "'");
}

void ScriptedProvider::push_response(std::string text) {
  std::lock_guard lock(mu_);
  queue_.push_back({false, std::move(text)});
}

void ScriptedProvider::push_error(std::string message) {
  std::lock_guard lock(mu_);
  queue_.push_back({true, std::move(message)});
}

std::string ScriptedProvider::chat(const ChatRequest& request) {
  Item item;
  {
    std::lock_guard lock(mu_);
    seen_.push_back(request);
    if (!queue_.empty()) {
      last_ = queue_.front();
      queue_.pop_front();
    }
    if (!last_) throw GatewayError("scripted provider has no responses");
    item = *last_;
  }
  if (item.is_error) throw GatewayError(item.text);
  return item.text;
}

std::vector<ChatRequest> ScriptedProvider::requests() const {
  std::lock_guard lock(mu_);
  return seen_;
}

TranscriptProvider TranscriptProvider::load(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("entries") ||
      !j["entries"].is_array())
    throw SchemaViolation("'" + path.string() +
                          "': expected {\"entries\": [...]}");
  std::vector<TranscriptEntry> entries;
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.value("system", nlohmann::json()).is_string() ||
        !e.value("user", nlohmann::json()).is_string() ||
        !e.value("response", nlohmann::json()).is_string())
      throw SchemaViolation("'" + path.string() +
                            "': entries need string system/user/response");
    entries.push_back({e["system"].get<std::string>(),
                       e["user"].get<std::string>(),
                       e["response"].get<std::string>()});
  }
  return TranscriptProvider(std::move(entries));
}

std::string TranscriptProvider::chat(const ChatRequest& request) {
  for (const TranscriptEntry& e : entries_)
    if (e.system == request.system && e.user == request.user) return e.response;
  throw GatewayError("transcript has no entry for this prompt");
}

std::string RecordingProvider::chat(const ChatRequest& request) {
  std::string response = inner_.chat(request);
  std::lock_guard lock(mu_);
  entries_.push_back({request.system, request.user, response});
  return response;
}

std::vector<TranscriptEntry> RecordingProvider::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

void RecordingProvider::save(const std::filesystem::path& path) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const TranscriptEntry& e : entries())
    arr.push_back(
        {{"system", e.system}, {"user", e.user}, {"response", e.response}});
  write_text_file(path, nlohmann::json{{"entries", arr}}.dump(2) + "\n");
}

}  // namespace slicekit
