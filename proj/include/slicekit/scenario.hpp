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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "slicekit/domain.hpp"

namespace slicekit {

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-range JSON input. The message names the offending
// field path, e.g. "requests[3].demand".
class SchemaViolation : public Error {
 public:
  using Error::Error;
};

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct RealRange {
  double lo = 0;
  double hi = 0;
};

struct SliceTemplate {
  std::int64_t capacity = 0;
  double latency_ms = 1;
  std::int64_t connections = 1;
};

struct ArchetypeProfile {
  IntRange demand;
  RealRange latency_ms;
};

// Everything `generate` depends on. Arrays are indexed by ServiceClass
// (eMBB, URLLC, mMTC).
struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::int64_t n_requests = 30;
  std::array<double, kServiceClassCount> archetype_mix{0.3, 0.3, 0.4};
  std::array<SliceTemplate, kServiceClassCount> slice_template{};
  std::array<ArchetypeProfile, kServiceClassCount> archetypes{};

  static GeneratorConfig defaults();

  // Throws ConfigInvalid.
  void validate() const;
};

// Three slices (SliceA/eMBB, SliceB/URLLC, SliceC/mMTC) and n_requests
// requests. Per request the random stream is consumed as (archetype, demand,
// latency), so the output is a pure function of the config.
Scenario generate(const GeneratorConfig& config);

nlohmann::json scenario_to_json(const Scenario& scenario);
// Throws SchemaViolation, or DomainError when the data breaks a scenario
// invariant (e.g. a request no slice can serve).
Scenario scenario_from_json(const nlohmann::json& j);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

// Overlays the fields present in `j` on top of `base`. Unknown keys are
// ignored.
GeneratorConfig generator_config_from_json(const nlohmann::json& j,
                                           GeneratorConfig base);
nlohmann::json generator_config_to_json(const GeneratorConfig& config);

// Shared file helpers; both throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace slicekit
