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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicekit/llm_gateway.hpp"
#include "slicekit/scenario.hpp"

namespace slicekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNodeLimit = 4;
inline constexpr int kExitGateway = 5;

// Entry point behind the `slicekit` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct MethodToggles {
  bool zero_shot = true;
  bool ilp_baseline = true;
  bool ilp_llm = true;
};

// Single JSON document describing a whole study: generator fields, provider
// fields, trial counts and method toggles side by side at the top level.
struct ExperimentConfig {
  GeneratorConfig generator = GeneratorConfig::defaults();
  ProviderConfig provider;
  std::optional<std::string> zero_shot_mock = "greedy-by-class";
  std::optional<std::string> similarity_mock = "greedy-by-class";
  int trials = 10;
  std::uint64_t base_seed = 0;
  std::size_t similarity_batch_size = 50;
  std::optional<int> similarity_fallback = 0;
  std::uint64_t node_limit = 5'000'000;
  MethodToggles methods;
};

// Missing keys keep their defaults. Throws SchemaViolation.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json experiment_config_to_json(const ExperimentConfig& c);

}  // namespace slicekit::cli
