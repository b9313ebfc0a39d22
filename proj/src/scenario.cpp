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

#include "slicekit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "slicekit/rng.hpp"

namespace slicekit {

using nlohmann::json;

namespace {

constexpr std::array<const char*, kServiceClassCount> kSliceIds = {
    "SliceA", "SliceB", "SliceC"};

constexpr std::array<std::array<const char*, 5>, kServiceClassCount>
    kDescriptions = {{
        {"4K video streaming session", "cloud gaming stream",
         "VR live event broadcast", "HD video conference",
         "large media file download"},
        {"factory robot control loop", "remote surgery haptic feedback",
         "vehicle collision warning", "smart grid protection trip signal",
         "drone flight control link"},
        {"soil moisture sensor uplink", "smart water meter reading",
         "parking occupancy sensor", "pallet tracking beacon",
         "air quality probe report"},
    }};

std::size_t idx(ServiceClass c) { return static_cast<std::size_t>(c); }

double round_tenth(double v) { return std::round(v * 10.0) / 10.0; }

// --- JSON field access with path-qualified errors -------------------------

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaViolation(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaViolation(path + "." + key + ": missing field");
  return *it;
}

std::string get_string(const json& obj, const std::string& path,
                       const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_string())
    throw SchemaViolation(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json& obj, const std::string& path, const char* key,
                     std::int64_t min) {
  const json& v = field(obj, path, key);
  if (!v.is_number_integer())
    throw SchemaViolation(path + "." + key + ": expected an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw SchemaViolation(path + "." + key + ": integer out of range");
  const auto value = v.get<std::int64_t>();
  if (value < min)
    throw SchemaViolation(path + "." + key +
                          ": must be >= " + std::to_string(min) + ", got " +
                          std::to_string(value));
  return value;
}

double get_positive_real(const json& obj, const std::string& path,
                         const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_number())
    throw SchemaViolation(path + "." + key + ": expected a number");
  const double value = v.get<double>();
  if (!std::isfinite(value) || value <= 0)
    throw SchemaViolation(path + "." + key + ": must be > 0");
  return value;
}

ServiceClass get_class(const json& obj, const std::string& path,
                       const char* key) {
  const std::string s = get_string(obj, path, key);
  auto c = service_class_from_string(s);
  if (!c)
    throw SchemaViolation(path + "." + key + ": unknown service class '" + s +
                          "'");
  return *c;
}

}  // namespace

GeneratorConfig GeneratorConfig::defaults() {
  GeneratorConfig c;
  c.slice_template[idx(ServiceClass::kEmbb)] = {55, 20.0, 20};
  c.slice_template[idx(ServiceClass::kUrllc)] = {40, 1.0, 15};
  c.slice_template[idx(ServiceClass::kMmtc)] = {50, 40.0, 40};
  c.archetypes[idx(ServiceClass::kEmbb)] = {{4, 8}, {40.0, 100.0}};
  c.archetypes[idx(ServiceClass::kUrllc)] = {{1, 3}, {1.0, 5.0}};
  c.archetypes[idx(ServiceClass::kMmtc)] = {{1, 2}, {50.0, 200.0}};
  return c;
}

void GeneratorConfig::validate() const {
  if (n_requests < 0) throw ConfigInvalid("n_requests must be >= 0");
  double total = 0;
  for (double w : archetype_mix) {
    if (!std::isfinite(w) || w < 0)
      throw ConfigInvalid("archetype_mix weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0) throw ConfigInvalid("archetype_mix weights are all zero");

  double tightest_slice = 0;
  for (std::size_t k = 0; k < kServiceClassCount; ++k) {
    const SliceTemplate& s = slice_template[k];
    const std::string name(to_string(static_cast<ServiceClass>(k)));
    if (s.capacity < 0)
      throw ConfigInvalid("slice template " + name + ": capacity < 0");
    if (!std::isfinite(s.latency_ms) || s.latency_ms <= 0)
      throw ConfigInvalid("slice template " + name + ": latency must be > 0");
    if (s.connections < 1)
      throw ConfigInvalid("slice template " + name + ": connections < 1");
    tightest_slice =
        k == 0 ? s.latency_ms : std::min(tightest_slice, s.latency_ms);
  }

  for (std::size_t k = 0; k < kServiceClassCount; ++k) {
    const ArchetypeProfile& p = archetypes[k];
    const std::string name(to_string(static_cast<ServiceClass>(k)));
    if (p.demand.lo < 1 || p.demand.hi < p.demand.lo)
      throw ConfigInvalid("archetype " + name +
                          ": demand range empty or below 1");
    if (!std::isfinite(p.latency_ms.lo) || !std::isfinite(p.latency_ms.hi) ||
        p.latency_ms.lo <= 0 || p.latency_ms.hi < p.latency_ms.lo)
      throw ConfigInvalid("archetype " + name +
                          ": latency range empty or not positive");
    if (archetype_mix[k] > 0 && p.latency_ms.lo < tightest_slice)
      throw ConfigInvalid("archetype " + name +
                          ": latency range reaches below every slice's "
                          "guarantee");
  }
}

Scenario generate(const GeneratorConfig& config) {
  config.validate();

  std::vector<Slice> slices;
  for (std::size_t k = 0; k < kServiceClassCount; ++k) {
    const SliceTemplate& t = config.slice_template[k];
    slices.push_back(Slice{kSliceIds[k], static_cast<ServiceClass>(k),
                           t.capacity, t.latency_ms, t.connections});
  }

  double total = 0;
  for (double w : config.archetype_mix) total += w;

  Rng rng(config.seed);
  std::array<int, kServiceClassCount> per_class{};
  std::vector<Request> requests;
  requests.reserve(static_cast<std::size_t>(config.n_requests));
  for (std::int64_t i = 0; i < config.n_requests; ++i) {
    const double u = rng.uniform01() * total;
    std::size_t k = 0;
    double acc = config.archetype_mix[0];
    while (k + 1 < kServiceClassCount && u >= acc) {
      ++k;
      acc += config.archetype_mix[k];
    }
    while (config.archetype_mix[k] == 0) --k;  // rounding past the last bin
    const ArchetypeProfile& p = config.archetypes[k];
    const std::int64_t demand = rng.uniform_int(p.demand.lo, p.demand.hi);
    const double latency = std::clamp(
        round_tenth(rng.uniform_real(p.latency_ms.lo, p.latency_ms.hi)),
        p.latency_ms.lo, p.latency_ms.hi);

    const int ordinal = per_class[k]++;
    std::string description =
        std::string(kDescriptions[k][ordinal % kDescriptions[k].size()]) +
        " #" + std::to_string(ordinal + 1);
    requests.push_back(Request{"Request" + std::to_string(i + 1), demand,
                               latency, static_cast<ServiceClass>(k),
                               std::move(description)});
  }
  return Scenario(std::move(slices), std::move(requests), config.seed);
}

json scenario_to_json(const Scenario& scenario) {
  json slices = json::array();
  for (const Slice& s : scenario.slices()) {
    slices.push_back({{"id", s.id},
                      {"class", std::string(to_string(s.slice_class))},
                      {"capacity", s.capacity},
                      {"latency_ms", s.latency_guarantee_ms},
                      {"connections", s.connection_capacity}});
  }
  json requests = json::array();
  for (const Request& r : scenario.requests()) {
    requests.push_back({{"id", r.id},
                        {"demand", r.demand},
                        {"latency_ms", r.latency_req_ms},
                        {"archetype", std::string(to_string(r.archetype))},
                        {"description", r.description}});
  }
  return json{{"seed", scenario.seed()},
              {"slices", std::move(slices)},
              {"requests", std::move(requests)}};
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw SchemaViolation("scenario: expected an object");
  std::uint64_t seed = 0;
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_integer() ||
        (!it->is_number_unsigned() && it->get<std::int64_t>() < 0))
      throw SchemaViolation("seed: expected a non-negative integer");
    seed = it->get<std::uint64_t>();
  }

  const json& js = field(j, "scenario", "slices");
  if (!js.is_array()) throw SchemaViolation("slices: expected an array");
  std::vector<Slice> slices;
  for (std::size_t m = 0; m < js.size(); ++m) {
    const std::string path = "slices[" + std::to_string(m) + "]";
    const json& s = js[m];
    slices.push_back(Slice{get_string(s, path, "id"),
                           get_class(s, path, "class"),
                           get_int(s, path, "capacity", 0),
                           get_positive_real(s, path, "latency_ms"),
                           get_int(s, path, "connections", 1)});
  }

  const json& jr = field(j, "scenario", "requests");
  if (!jr.is_array()) throw SchemaViolation("requests: expected an array");
  std::vector<Request> requests;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string path = "requests[" + std::to_string(i) + "]";
    const json& r = jr[i];
    requests.push_back(Request{
        get_string(r, path, "id"), get_int(r, path, "demand", 1),
        get_positive_real(r, path, "latency_ms"),
        get_class(r, path, "archetype"), get_string(r, path, "description")});
  }
  return Scenario(std::move(slices), std::move(requests), seed);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path) {
  write_text_file(path, scenario_to_json(scenario).dump(2) + "\n");
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw SchemaViolation("'" + path.string() + "' is not valid JSON");
  return scenario_from_json(j);
}

namespace {

void read_int_range(const json& j, const std::string& path, IntRange& out) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw SchemaViolation(path + ": expected [lo, hi] integers");
  out = {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

void read_real_range(const json& j, const std::string& path, RealRange& out) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaViolation(path + ": expected [lo, hi] numbers");
  out = {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

GeneratorConfig generator_config_from_json(const json& j,
                                           GeneratorConfig base) {
  if (!j.is_object()) throw SchemaViolation("config: expected an object");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_integer() ||
        (!it->is_number_unsigned() && it->get<std::int64_t>() < 0))
      throw SchemaViolation("seed: expected a non-negative integer");
    base.seed = it->get<std::uint64_t>();
  }
  if (j.contains("n_requests"))
    base.n_requests = get_int(j, "config", "n_requests", 0);
  if (auto it = j.find("archetype_mix"); it != j.end()) {
    if (!it->is_array() || it->size() != kServiceClassCount)
      throw SchemaViolation("archetype_mix: expected 3 numbers");
    for (std::size_t k = 0; k < kServiceClassCount; ++k) {
      if (!(*it)[k].is_number())
        throw SchemaViolation("archetype_mix: expected 3 numbers");
      base.archetype_mix[k] = (*it)[k].get<double>();
    }
  }
  for (std::size_t k = 0; k < kServiceClassCount; ++k) {
    const std::string name(to_string(static_cast<ServiceClass>(k)));
    if (auto s = j.find("slice_template"); s != j.end() && s->contains(name)) {
      const json& t = (*s)[name];
      const std::string path = "slice_template." + name;
      SliceTemplate& out = base.slice_template[k];
      if (t.contains("capacity"))
        out.capacity = get_int(t, path, "capacity", 0);
      if (t.contains("latency_ms"))
        out.latency_ms = get_positive_real(t, path, "latency_ms");
      if (t.contains("connections"))
        out.connections = get_int(t, path, "connections", 1);
    }
    if (auto a = j.find("archetypes"); a != j.end() && a->contains(name)) {
      const json& p = (*a)[name];
      const std::string path = "archetypes." + name;
      if (p.contains("demand"))
        read_int_range(p["demand"], path + ".demand",
                       base.archetypes[k].demand);
      if (p.contains("latency_ms"))
        read_real_range(p["latency_ms"], path + ".latency_ms",
                        base.archetypes[k].latency_ms);
    }
  }
  return base;
}

json generator_config_to_json(const GeneratorConfig& c) {
  json slices = json::object();
  json archetypes = json::object();
  for (std::size_t k = 0; k < kServiceClassCount; ++k) {
    const std::string name(to_string(static_cast<ServiceClass>(k)));
    slices[name] = {{"capacity", c.slice_template[k].capacity},
                    {"latency_ms", c.slice_template[k].latency_ms},
                    {"connections", c.slice_template[k].connections}};
    archetypes[name] = {
        {"demand", {c.archetypes[k].demand.lo, c.archetypes[k].demand.hi}},
        {"latency_ms",
         {c.archetypes[k].latency_ms.lo, c.archetypes[k].latency_ms.hi}}};
  }
  return json{{"seed", c.seed},
              {"n_requests", c.n_requests},
              {"archetype_mix", c.archetype_mix},
              {"slice_template", std::move(slices)},
              {"archetypes", std::move(archetypes)}};
}

}  // namespace slicekit
