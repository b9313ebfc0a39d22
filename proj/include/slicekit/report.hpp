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
#include <string>
#include <vector>

#include "slicekit/evaluation.hpp"

namespace slicekit {

struct MethodRuns {
  std::string method;
  std::vector<MetricsReport> runs;
};

// Every "*.metrics.json" below run_dir, grouped by its "method" field. Files
// are visited in path order and methods keep first-seen order.
std::vector<MethodRuns> collect_runs(const std::filesystem::path& run_dir);

// One row per method: run count, then mean and sample std of completeness,
// homogeneity and violation count.
std::string summary_table_csv(const std::vector<MethodRuns>& methods);

enum class UtilizationAxis { kBandwidth, kDensity };

// Grouped bar chart: one group per slice, one bar per method (mean, with a
// +/- std whisker). Fixed 720x420 viewBox.
std::string utilization_svg(const std::vector<MethodRuns>& methods,
                            UtilizationAxis axis);

// Writes table.csv, bandwidth_utilization.svg and density_utilization.svg.
// Throws EmptyInput when `methods` is empty.
void write_report(const std::vector<MethodRuns>& methods,
                  const std::filesystem::path& out_dir);

}  // namespace slicekit
