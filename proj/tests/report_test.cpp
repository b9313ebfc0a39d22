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

#include "slicekit/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "slicekit/scenario.hpp"

namespace slicekit {
namespace {

namespace fs = std::filesystem;

MetricsReport metrics(double completeness, double homog, double bw) {
  MetricsReport m;
  m.completeness_pct = completeness;
  m.homogeneity = homog;
  m.violation_count = 0;
  m.utilization = {{"SliceA", bw, bw / 2}, {"SliceB", 0.5, 0.25}};
  return m;
}

TEST(SummaryTableTest, SingleRunHasZeroStd) {
  const auto csv = summary_table_csv({{"ilp", {metrics(100, 1, 0.9)}}});
  EXPECT_EQ(csv,
            "method,runs,completeness_mean,completeness_std,homogeneity_mean,"
            "homogeneity_std,violations_mean,violations_std\n"
            "ilp,1,100.00,0.00,1.0000,0.0000,0.00,0.00\n");
}

TEST(SummaryTableTest, OneRowPerMethod) {
  const auto csv =
      summary_table_csv({{"a", {metrics(99, 0.5, 1), metrics(100, 0.5, 1)}},
                         {"b", {metrics(100, 1, 1)}}});
  EXPECT_NE(csv.find("\na,2,99.50,0.71,0.5000,0.0000,"), std::string::npos)
      << csv;
  EXPECT_NE(csv.find("\nb,1,"), std::string::npos);
}

TEST(UtilizationSvgTest, MarksOverfullAxis) {
  const auto ok = utilization_svg({{"a", {metrics(100, 1, 0.8)}}},
                                  UtilizationAxis::kBandwidth);
  EXPECT_EQ(ok.rfind("<svg", 0), 0u);
  EXPECT_NE(ok.find("SliceB"), std::string::npos);
  EXPECT_EQ(ok.find("stroke-dasharray"), std::string::npos);
  const auto over = utilization_svg({{"a", {metrics(100, 1, 1.4)}}},
                                    UtilizationAxis::kBandwidth);
  EXPECT_NE(over.find("stroke-dasharray"), std::string::npos);
}

TEST(WriteReportTest, FilesAndEmptyInput) {
  const auto dir = fs::temp_directory_path() / "slicekit_report_test";
  fs::remove_all(dir);
  write_report({{"a", {metrics(100, 1, 0.8)}}}, dir);
  EXPECT_TRUE(fs::exists(dir / "table.csv"));
  EXPECT_TRUE(fs::exists(dir / "bandwidth_utilization.svg"));
  EXPECT_TRUE(fs::exists(dir / "density_utilization.svg"));
  EXPECT_THROW(write_report({}, dir), EmptyInput);
}

TEST(CollectRunsTest, GroupsByMethod) {
  const auto dir = fs::temp_directory_path() / "slicekit_collect_test";
  fs::remove_all(dir);
  const auto doc = [](const std::string& method, double c) {
    return nlohmann::json{{"method", method},
                          {"run", "00"},
                          {"metrics", metrics_to_json(metrics(c, 1, 0.5))}}
        .dump();
  };
  write_text_file(dir / "x" / "r0.metrics.json", doc("m1", 100));
  write_text_file(dir / "x" / "r1.metrics.json", doc("m1", 90));
  write_text_file(dir / "y" / "r0.metrics.json", doc("m2", 80));
  write_text_file(dir / "y" / "notes.json", "{}");
  const auto runs = collect_runs(dir);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].method, "m1");
  EXPECT_EQ(runs[0].runs.size(), 2u);
  EXPECT_DOUBLE_EQ(runs[0].runs[1].completeness_pct, 90);
  EXPECT_EQ(runs[1].method, "m2");
}

}  // namespace
}  // namespace slicekit
