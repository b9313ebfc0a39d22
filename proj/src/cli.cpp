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

#include "slicekit/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slicekit/evaluation.hpp"
#include "slicekit/http_provider.hpp"
#include "slicekit/ilp.hpp"
#include "slicekit/parallel.hpp"
#include "slicekit/report.hpp"
#include "slicekit/rng.hpp"
#include "slicekit/similarity.hpp"

namespace slicekit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Usage-level failure detected after parsing (bad flag combination etc.).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A command finished but wants a specific nonzero exit code.
struct ExitStatus {
  int code;
};

std::string pad2(std::size_t k) {
  std::string s = std::to_string(k);
  return s.size() < 2 ? "0" + s : s;
}

void add_provider_flags(CLI::App* cmd, ProviderConfig& p) {
  cmd->add_option("--endpoint", p.endpoint_url, "Chat-completion endpoint URL");
  cmd->add_option("--model", p.model_name, "Model name sent to the provider");
  cmd->add_option("--api-key-env", p.api_key_env_var,
                  "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_option("--temperature", p.temperature, "Sampling temperature")
      ->check(CLI::Range(0.0, 2.0))
      ->capture_default_str();
  cmd->add_option("--max-retries", p.max_retries, "Extra attempts per prompt")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--timeout-ms", p.request_timeout_ms, "Per-request timeout")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--parallelism", p.parallelism_bound,
                  "Concurrent provider calls")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::unique_ptr<ChatProvider> make_provider(
    const ProviderConfig& config, const std::optional<std::string>& mock,
    const std::optional<std::string>& transcript, const Scenario& scenario) {
  if (mock && transcript)
    throw UsageError("--mock and --transcript are mutually exclusive");
  if (mock) {
    try {
      return make_mock_provider(*mock, scenario);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (transcript)
    return std::make_unique<TranscriptProvider>(
        TranscriptProvider::load(*transcript));
  return std::make_unique<HttpChatProvider>(config);
}

Assignment load_assignment_file(const fs::path& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = json::parse(text, nullptr, false);
    if (j.is_discarded())
      throw SchemaViolation("'" + path.string() + "' is not valid JSON");
    return assignment_from_json(j);
  }
  return parse_assignment_response(text);
}

// Persists one evaluated run as <stem>.{assignment,violations,metrics}.json.
MetricsReport write_run(const fs::path& dir, const std::string& stem,
                        const std::string& method, const std::string& run,
                        const Scenario& scenario, const Assignment& assignment,
                        json assignment_doc) {
  const ViolationReport violations = validate(scenario, assignment);
  const MetricsReport metrics = compute_metrics(scenario, assignment);
  write_text_file(dir / (stem + ".assignment.json"),
                  assignment_doc.dump(2) + "\n");
  write_text_file(dir / (stem + ".violations.json"),
                  violation_report_to_json(violations).dump(2) + "\n");
  write_text_file(dir / (stem + ".metrics.json"),
                  json{{"method", method},
                       {"run", run},
                       {"metrics", metrics_to_json(metrics)}}
                          .dump(2) +
                      "\n");
  return metrics;
}

std::vector<std::string> slice_ids(const Scenario& scenario) {
  std::vector<std::string> ids;
  for (const Slice& s : scenario.slices()) ids.push_back(s.id);
  return ids;
}

std::string csv_with_aggregate(const Scenario& scenario,
                               const std::string& method,
                               const std::vector<std::string>& labels,
                               const std::vector<MetricsReport>& runs) {
  std::string csv = metrics_csv_header(slice_ids(scenario));
  for (std::size_t k = 0; k < runs.size(); ++k)
    csv += metrics_csv_row(method, labels[k], runs[k]);
  if (runs.empty()) return csv;
  csv += aggregate_csv_rows(method, aggregate(runs));
  return csv;
}

struct TrialSummary {
  std::vector<MetricsReport> metrics;  // successful trials, in trial order
  std::size_t failed = 0;
  std::size_t gateway_failures = 0;
};

TrialSummary run_zero_shot_trials(const Scenario& scenario,
                                  ChatProvider& provider,
                                  const ProviderConfig& config, int trials,
                                  std::uint64_t base_seed,
                                  const std::string& method,
                                  const fs::path& dir, std::ostream& err) {
  const auto count = static_cast<std::size_t>(trials);
  std::vector<std::optional<MetricsReport>> results(count);
  std::vector<std::string> errors(count);
  std::vector<bool> gateway(count, false);
  parallel_for(count, static_cast<std::size_t>(config.parallelism_bound),
               [&](std::size_t k) {
                 const std::uint64_t seed = derive_seed(base_seed, k);
                 const std::string stem = "trial_" + pad2(k);
                 try {
                   const Assignment a =
                       zero_shot_assign(scenario, provider, seed, config);
                   json doc = assignment_to_json(a);
                   doc["shuffle_seed"] = seed;
                   doc["status"] = "ok";
                   results[k] = write_run(dir, stem, method, pad2(k), scenario,
                                          a, std::move(doc));
                 } catch (const ParseError& e) {
                   errors[k] = std::string("ParseError: ") + e.what();
                 } catch (const GatewayError& e) {
                   errors[k] = std::string("GatewayError: ") + e.what();
                   gateway[k] = true;
                 }
                 if (!results[k])
                   write_text_file(dir / (stem + ".assignment.json"),
                                   json{{"rows", json::array()},
                                        {"shuffle_seed", seed},
                                        {"status", "failed"},
                                        {"error", errors[k]}}
                                           .dump(2) +
                                       "\n");
               });

  TrialSummary summary;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < count; ++k) {
    if (results[k]) {
      summary.metrics.push_back(*results[k]);
      labels.push_back(pad2(k));
    } else {
      ++summary.failed;
      summary.gateway_failures += gateway[k];
      err << "trial " << k << " failed: " << errors[k] << "\n";
    }
  }
  write_text_file(
      dir / "metrics.csv",
      csv_with_aggregate(scenario, method, labels, summary.metrics));
  return summary;
}

// Solves, checks the result against the validator and persists it under
// `stem`. Returns the solve result; metrics are written only when an
// assignment exists.
SolveResult run_ilp(const Scenario& scenario, const SimilarityMatrix& sim,
                    std::uint64_t node_limit, bool use_oracle,
                    const fs::path& dir, const std::string& stem,
                    const std::string& method) {
  const SolveResult result =
      use_oracle
          ? brute_force_oracle(scenario, sim)
          : solve(build_formulation(scenario, sim), scenario, node_limit);
  json doc = solve_result_to_json(result);
  if (result.assignment) {
    write_run(dir, stem, method, "00", scenario, *result.assignment,
              std::move(doc));
    if (result.status == SolveStatus::kOptimal &&
        !validate(scenario, *result.assignment).empty())
      throw std::logic_error(
          "solver returned an assignment that violates "
          "its own constraints");
  } else {
    write_text_file(dir / (stem + ".assignment.json"), doc.dump(2) + "\n");
  }
  return result;
}

int exit_for(const SolveResult& r) {
  switch (r.status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kNodeLimit:
      return kExitNodeLimit;
  }
  return kExitOk;
}

json read_json_file(const fs::path& path) {
  const auto j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded())
    throw SchemaViolation("'" + path.string() + "' is not valid JSON");
  return j;
}

// --- commands ----------------------------------------------------------------

struct GenerateArgs {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> requests;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorConfig config = GeneratorConfig::defaults();
  if (a.config)
    config = generator_config_from_json(read_json_file(*a.config), config);
  if (a.seed) config.seed = *a.seed;
  if (a.requests) config.n_requests = *a.requests;
  const Scenario scenario = generate(config);
  save_scenario(scenario, a.out);
  out << "wrote " << a.out << " (" << scenario.request_count()
      << " requests, seed " << scenario.seed() << ")\n";
  return kExitOk;
}

struct AssignArgs {
  std::string scenario;
  int trials = 10;
  std::optional<std::string> mock;
  std::optional<std::string> transcript;
  std::uint64_t base_seed = 0;
  std::string out_dir;
  std::optional<std::string> method;
  ProviderConfig provider;
};

int cmd_assign_llm(const AssignArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(a.scenario);
  auto provider = make_provider(a.provider, a.mock, a.transcript, scenario);
  const std::string method =
      a.method.value_or(a.mock ? "zero-shot-" + *a.mock : "zero-shot");
  const TrialSummary s =
      run_zero_shot_trials(scenario, *provider, a.provider, a.trials,
                           a.base_seed, method, a.out_dir, err);
  if (!s.metrics.empty()) {
    const AggregateReport agg = aggregate(s.metrics);
    out << method << ": " << s.metrics.size() << " ok, " << s.failed
        << " failed; completeness "
        << format_fixed(agg.completeness_pct.mean, 2) << " +/- "
        << format_fixed(agg.completeness_pct.std, 2) << ", violations/trial "
        << format_fixed(agg.violation_count.mean, 2) << "\n";
    return kExitOk;
  }
  out << method << ": all " << s.failed << " trials failed\n";
  return s.gateway_failures > 0 ? kExitGateway : kExitOk;
}

struct SolveArgs {
  std::string scenario;
  std::string sim = "baseline";
  std::optional<std::string> mock;
  std::optional<std::string> transcript;
  std::size_t batch_size = 50;
  std::uint64_t node_limit = kDefaultNodeLimit;
  std::string out;
  std::optional<std::string> sim_out;
  bool oracle = false;
  ProviderConfig provider;
};

SimilarityMatrix resolve_similarity(const SolveArgs& a,
                                    const Scenario& scenario) {
  if (a.sim == "baseline") return baseline_similarity(scenario);
  if (a.sim == "llm") {
    auto provider = make_provider(a.provider, a.mock, a.transcript, scenario);
    SimilarityOptions opts;
    opts.batch_size = a.batch_size;
    opts.temperature = a.provider.temperature;
    opts.max_retries = a.provider.max_retries;
    opts.parallelism = a.provider.parallelism_bound;
    return llm_similarity(scenario, *provider, opts);
  }
  if (a.sim.rfind("file:", 0) == 0) {
    SimilarityMatrix sim = load_similarity(a.sim.substr(5));
    if (sim.n() != scenario.request_count())
      throw DimensionMismatch(
          "similarity file has n=" + std::to_string(sim.n()) +
          " but the scenario has " + std::to_string(scenario.request_count()) +
          " requests");
    return sim;
  }
  throw UsageError("--sim must be baseline, llm or file:<path>");
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Scenario scenario = load_scenario(a.scenario);
  const SimilarityMatrix sim = resolve_similarity(a, scenario);
  if (a.sim_out) save_similarity(sim, *a.sim_out);

  const fs::path out_path(a.out);
  std::string stem = out_path.filename().string();
  for (const char* suffix : {".assignment.json", ".json"})
    if (stem.size() > std::string_view(suffix).size() &&
        stem.ends_with(suffix)) {
      stem.resize(stem.size() - std::string_view(suffix).size());
      break;
    }
  const fs::path dir =
      out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  const SolveResult r =
      run_ilp(scenario, sim, a.node_limit, a.oracle, dir, stem,
              "ilp-" + std::string(to_string(sim.source())));
  // The result document goes exactly where asked.
  write_text_file(out_path, solve_result_to_json(r).dump(2) + "\n");
  out << to_string(r.status) << " objective=" << r.objective
      << " nodes=" << r.nodes_explored << "\n";
  return exit_for(r);
}

int cmd_evaluate(const std::string& scenario_path,
                 const std::string& assignment_path, std::ostream& out) {
  const Scenario scenario = load_scenario(scenario_path);
  const Assignment assignment = load_assignment_file(assignment_path);
  json j = metrics_to_json(compute_metrics(scenario, assignment));
  j["violations"] =
      violation_report_to_json(validate(scenario, assignment))["violations"];
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& run_dir, const std::string& out_dir,
               std::ostream& out) {
  const auto methods = collect_runs(run_dir);
  if (methods.empty())
    throw UsageError("no *.metrics.json files under '" + run_dir + "'");
  write_report(methods, out_dir);
  out << "wrote report for " << methods.size() << " method(s) to " << out_dir
      << "\n";
  return kExitOk;
}

int cmd_run_experiment(const std::string& config_path,
                       const std::string& out_dir, std::ostream& out,
                       std::ostream& err) {
  const ExperimentConfig c =
      experiment_config_from_json(read_json_file(config_path));
  c.provider.validate();
  c.generator.validate();
  // Fail before doing any work when a real provider has no credentials.
  const bool needs_real = (c.methods.zero_shot && !c.zero_shot_mock) ||
                          (c.methods.ilp_llm && !c.similarity_mock);
  if (needs_real) read_api_key(c.provider.api_key_env_var);

  const fs::path root(out_dir);
  const Scenario scenario = generate(c.generator);
  save_scenario(scenario, root / "scenario.json");
  write_text_file(root / "config.json",
                  experiment_config_to_json(c).dump(2) + "\n");
  const fs::path runs = root / "runs";
  int code = kExitOk;

  if (c.methods.zero_shot) {
    auto provider =
        make_provider(c.provider, c.zero_shot_mock, std::nullopt, scenario);
    const TrialSummary s =
        run_zero_shot_trials(scenario, *provider, c.provider, c.trials,
                             c.base_seed, "zero-shot", runs / "zero-shot", err);
    out << "zero-shot: " << s.metrics.size() << " ok, " << s.failed
        << " failed\n";
  }

  if (c.methods.ilp_baseline) {
    const SolveResult r =
        run_ilp(scenario, baseline_similarity(scenario), c.node_limit, false,
                runs / "ilp-baseline", "run_00", "ilp-baseline");
    out << "ilp-baseline: " << to_string(r.status)
        << " objective=" << r.objective << "\n";
    if (code == kExitOk) code = exit_for(r);
  }

  if (c.methods.ilp_llm) {
    auto provider =
        make_provider(c.provider, c.similarity_mock, std::nullopt, scenario);
    SimilarityOptions opts;
    opts.batch_size = c.similarity_batch_size;
    opts.temperature = c.provider.temperature;
    opts.max_retries = c.provider.max_retries;
    opts.parallelism = c.provider.parallelism_bound;
    opts.fallback = c.similarity_fallback;
    const SimilarityMatrix reference = baseline_similarity(scenario);
    std::vector<MetricsReport> metrics;
    std::vector<std::string> labels;
    for (int k = 0; k < c.trials; ++k) {
      const fs::path dir = runs / "ilp-llm";
      const std::string stem = "run_" + pad2(static_cast<std::size_t>(k));
      const SimilarityMatrix sim = llm_similarity(scenario, *provider, opts);
      save_similarity(sim, dir / (stem + ".similarity.json"));
      const SolveResult r =
          run_ilp(scenario, sim, c.node_limit, false, dir, stem, "ilp-llm");
      out << "ilp-llm " << stem << ": " << to_string(r.status)
          << " objective=" << r.objective
          << " agreement=" << format_fixed(matrix_agreement(sim, reference), 4)
          << "\n";
      if (r.assignment) {
        metrics.push_back(compute_metrics(scenario, *r.assignment));
        labels.push_back(pad2(static_cast<std::size_t>(k)));
      }
      if (code == kExitOk) code = exit_for(r);
    }
    write_text_file(runs / "ilp-llm" / "metrics.csv",
                    csv_with_aggregate(scenario, "ilp-llm", labels, metrics));
  }

  const auto methods = collect_runs(runs);
  if (!methods.empty()) write_report(methods, root / "report");
  out << "report written to " << (root / "report").string() << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"slicekit: network-slice allocation experiments"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic scenario");
  g->add_option("--config", gen.config, "Generator config JSON");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--requests", gen.requests, "Number of requests")
      ->check(CLI::NonNegativeNumber);
  g->add_option("-o,--out", gen.out, "Output scenario file")->required();

  AssignArgs asg;
  auto* z = app.add_subcommand("assign-llm", "Zero-shot LLM assignment trials");
  z->add_option("--scenario", asg.scenario, "Scenario file")->required();
  z->add_option("--trials", asg.trials, "Number of trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  z->add_option("--mock", asg.mock, "Use a deterministic mock provider");
  z->add_option("--transcript", asg.transcript, "Replay a recorded transcript");
  z->add_option("--base-seed", asg.base_seed, "Seed for per-trial shuffles");
  z->add_option("--method", asg.method, "Method label in outputs");
  z->add_option("--out-dir", asg.out_dir, "Directory for trial outputs")
      ->required();
  add_provider_flags(z, asg.provider);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve the similarity ILP exactly");
  s->add_option("--scenario", sol.scenario, "Scenario file")->required();
  s->add_option("--sim", sol.sim, "baseline | llm | file:<path>")
      ->capture_default_str();
  s->add_option("--mock", sol.mock, "Mock provider for --sim llm");
  s->add_option("--transcript", sol.transcript, "Transcript for --sim llm");
  s->add_option("--batch-size", sol.batch_size, "Pairs per similarity prompt")
      ->check(CLI::PositiveNumber);
  s->add_option("--node-limit", sol.node_limit, "Branch-and-bound node budget")
      ->capture_default_str();
  s->add_option("--sim-out", sol.sim_out, "Also save the similarity matrix");
  s->add_option("-o,--out", sol.out, "Output result file")->required();
  s->add_flag("--oracle", sol.oracle)->group("");
  add_provider_flags(s, sol.provider);

  std::string eval_scenario, eval_assignment;
  auto* e =
      app.add_subcommand("evaluate", "Validate an assignment and score it");
  e->add_option("--scenario", eval_scenario, "Scenario file")->required();
  e->add_option("--assignment", eval_assignment,
                "Assignment file (JSON rows or @-delimited block)")
      ->required();

  std::string report_in, report_out;
  auto* r =
      app.add_subcommand("report", "Summarize run metrics as CSV and SVG");
  r->add_option("--run-dir", report_in, "Directory with *.metrics.json")
      ->required();
  r->add_option("--out-dir", report_out, "Output directory")->required();

  std::string exp_config, exp_out = "experiment_out";
  auto* x = app.add_subcommand("run-experiment", "Run the full study");
  x->add_option("--config", exp_config, "Experiment config JSON")->required();
  x->add_option("--out-dir", exp_out, "Output directory")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (z->parsed()) return cmd_assign_llm(asg, out, err);
    if (s->parsed()) return cmd_solve(sol, out);
    if (e->parsed()) return cmd_evaluate(eval_scenario, eval_assignment, out);
    if (r->parsed()) return cmd_report(report_in, report_out, out);
    if (x->parsed()) return cmd_run_experiment(exp_config, exp_out, out, err);
  } catch (const GatewayError& ex) {
    err << "gateway error: " << ex.what() << "\n";
    return kExitGateway;
  } catch (const ParseError& ex) {
    err << "unparseable provider output: " << ex.what() << "\n";
    return kExitGateway;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object())
    throw SchemaViolation("experiment config: expected an object");
  ExperimentConfig c;
  c.generator = generator_config_from_json(j, c.generator);
  try {
    ProviderConfig& p = c.provider;
    p.endpoint_url = j.value("endpoint_url", p.endpoint_url);
    p.model_name = j.value("model_name", p.model_name);
    p.api_key_env_var = j.value("api_key_env_var", p.api_key_env_var);
    p.temperature = j.value("temperature", p.temperature);
    p.max_retries = j.value("max_retries", p.max_retries);
    p.request_timeout_ms = j.value("request_timeout_ms", p.request_timeout_ms);
    p.parallelism_bound = j.value("parallelism_bound", p.parallelism_bound);

    const auto opt_string = [&](const char* key,
                                std::optional<std::string>& field) {
      if (!j.contains(key)) return;
      if (j[key].is_null()) {
        field.reset();
      } else {
        field = j[key].get<std::string>();
      }
    };
    opt_string("zero_shot_mock", c.zero_shot_mock);
    opt_string("similarity_mock", c.similarity_mock);
    c.trials = j.value("trials", c.trials);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.similarity_batch_size =
        j.value("similarity_batch_size", c.similarity_batch_size);
    if (j.contains("similarity_fallback")) {
      if (j["similarity_fallback"].is_null())
        c.similarity_fallback.reset();
      else
        c.similarity_fallback = j["similarity_fallback"].get<int>();
    }
    c.node_limit = j.value("node_limit", c.node_limit);
    if (j.contains("methods")) {
      const json& m = j["methods"];
      c.methods.zero_shot = m.value("zero_shot", c.methods.zero_shot);
      c.methods.ilp_baseline = m.value("ilp_baseline", c.methods.ilp_baseline);
      c.methods.ilp_llm = m.value("ilp_llm", c.methods.ilp_llm);
    }
  } catch (const json::exception& e) {
    throw SchemaViolation(std::string("experiment config: ") + e.what());
  }
  if (c.trials < 1) throw SchemaViolation("trials: must be >= 1");
  if (c.similarity_batch_size < 1)
    throw SchemaViolation("similarity_batch_size: must be >= 1");
  if (c.similarity_fallback && *c.similarity_fallback != 0 &&
      *c.similarity_fallback != 1)
    throw SchemaViolation("similarity_fallback: must be 0, 1 or null");
  return c;
}

json experiment_config_to_json(const ExperimentConfig& c) {
  json j = generator_config_to_json(c.generator);
  j["endpoint_url"] = c.provider.endpoint_url;
  j["model_name"] = c.provider.model_name;
  j["api_key_env_var"] = c.provider.api_key_env_var;
  j["temperature"] = c.provider.temperature;
  j["max_retries"] = c.provider.max_retries;
  j["request_timeout_ms"] = c.provider.request_timeout_ms;
  j["parallelism_bound"] = c.provider.parallelism_bound;
  j["zero_shot_mock"] =
      c.zero_shot_mock ? json(*c.zero_shot_mock) : json(nullptr);
  j["similarity_mock"] =
      c.similarity_mock ? json(*c.similarity_mock) : json(nullptr);
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["similarity_batch_size"] = c.similarity_batch_size;
  j["similarity_fallback"] =
      c.similarity_fallback ? json(*c.similarity_fallback) : json(nullptr);
  j["node_limit"] = c.node_limit;
  j["methods"] = {{"zero_shot", c.methods.zero_shot},
                  {"ilp_baseline", c.methods.ilp_baseline},
                  {"ilp_llm", c.methods.ilp_llm}};
  return j;
}

}  // namespace slicekit::cli
