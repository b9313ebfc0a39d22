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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slicekit/scenario.hpp"

namespace slicekit {

namespace fs = std::filesystem;

std::vector<MethodRuns> collect_runs(const fs::path& run_dir) {
  std::error_code ec;
  if (!fs::is_directory(run_dir, ec))
    throw IoError("'" + run_dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(run_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 13 &&
        name.ends_with(".metrics.json"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<MethodRuns> out;
  for (const fs::path& f : files) {
    const auto j = nlohmann::json::parse(read_text_file(f), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("method") ||
        !j["method"].is_string() || !j.contains("metrics"))
      throw SchemaViolation("'" + f.string() +
                            "': expected {\"method\", \"metrics\"}");
    const auto method = j["method"].get<std::string>();
    auto it = std::find_if(out.begin(), out.end(), [&](const MethodRuns& m) {
      return m.method == method;
    });
    if (it == out.end()) {
      out.push_back({method, {}});
      it = out.end() - 1;
    }
    it->runs.push_back(metrics_from_json(j["metrics"]));
  }
  return out;
}

std::string summary_table_csv(const std::vector<MethodRuns>& methods) {
  std::string csv =
      "method,runs,completeness_mean,completeness_std,homogeneity_mean,"
      "homogeneity_std,violations_mean,violations_std\n";
  for (const MethodRuns& m : methods) {
    const AggregateReport a = aggregate(m.runs);
    csv += m.method + "," + std::to_string(a.runs) + "," +
           format_fixed(a.completeness_pct.mean, 2) + "," +
           format_fixed(a.completeness_pct.std, 2) + ",";
    if (a.homogeneity.count > 0)
      csv += format_fixed(a.homogeneity.mean, 4) + "," +
             format_fixed(a.homogeneity.std, 4);
    else
      csv += ",";
    csv += "," + format_fixed(a.violation_count.mean, 2) + "," +
           format_fixed(a.violation_count.std, 2) + "\n";
  }
  return csv;
}

namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                    "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string utilization_svg(const std::vector<MethodRuns>& methods,
                            UtilizationAxis axis) {
  const bool bw = axis == UtilizationAxis::kBandwidth;
  struct Bar {
    double mean, std;
  };
  std::vector<std::string> slices;
  std::vector<std::vector<Bar>> bars;  // [method][slice]
  double top = 1.0;
  for (const MethodRuns& m : methods) {
    const AggregateReport a = aggregate(m.runs);
    std::vector<Bar> row;
    for (const SliceSummary& s : a.utilization) {
      if (std::find(slices.begin(), slices.end(), s.slice_id) == slices.end())
        slices.push_back(s.slice_id);
    }
    for (const std::string& id : slices) {
      auto it =
          std::find_if(a.utilization.begin(), a.utilization.end(),
                       [&](const SliceSummary& s) { return s.slice_id == id; });
      Bar b{0, 0};
      if (it != a.utilization.end()) {
        const Summary& s = bw ? it->bandwidth : it->density;
        b = {std::isfinite(s.mean) ? s.mean : 0,
             std::isfinite(s.std) ? s.std : 0};
      }
      top = std::max(top, b.mean + b.std);
      row.push_back(b);
    }
    bars.push_back(std::move(row));
  }
  top = std::ceil(top * 4.0) / 4.0;

  constexpr double kW = 720, kH = 420, kLeft = 60, kRight = 170, kTop = 40,
                   kBottom = 50;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;
  const auto y_of = [&](double v) { return kTop + plot_h * (1.0 - v / top); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 720 420\" "
         "width=\"720\" height=\"420\" font-family=\"sans-serif\" "
         "font-size=\"12\">\n";
  svg << "<rect width=\"720\" height=\"420\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft) << "\" y=\"22\" font-size=\"15\">"
      << (bw ? "Bandwidth utilization" : "Density utilization")
      << " per slice (mean &#177; std)</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double v = top * t / 4.0;
    const double y = y_of(v);
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kLeft + plot_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  if (top > 1.0) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y_of(1.0))
        << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\"" << num(y_of(1.0))
        << "\" stroke=\"#cc0000\" stroke-dasharray=\"4 3\"/>\n";
  }

  const double group_w = slices.empty() ? plot_w : plot_w / slices.size();
  const double bar_w =
      methods.empty() ? 0 : group_w * 0.8 / static_cast<double>(methods.size());
  for (std::size_t s = 0; s < slices.size(); ++s) {
    const double gx = kLeft + group_w * s + group_w * 0.1;
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const Bar& b = bars[k][s];
      const double x = gx + bar_w * k;
      const double y = y_of(b.mean);
      svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(bar_w * 0.9) << "\" height=\"" << num(kTop + plot_h - y)
          << "\" fill=\"" << kPalette[k % 8] << "\"><title>"
          << escape_xml(methods[k].method) << " " << escape_xml(slices[s])
          << ": " << format_fixed(b.mean, 4) << "</title></rect>\n";
      if (b.std > 0) {
        const double cx = x + bar_w * 0.45;
        svg << "<line x1=\"" << num(cx) << "\" y1=\""
            << num(y_of(b.mean + b.std)) << "\" x2=\"" << num(cx) << "\" y2=\""
            << num(y_of(std::max(0.0, b.mean - b.std)))
            << "\" stroke=\"black\"/>\n";
      }
    }
    svg << "<text x=\"" << num(kLeft + group_w * (s + 0.5)) << "\" y=\""
        << num(kTop + plot_h + 20) << "\" text-anchor=\"middle\">"
        << escape_xml(slices[s]) << "</text>\n";
  }
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h)
      << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h)
      << "\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < methods.size(); ++k) {
    const double y = kTop + 10 + 20.0 * k;
    svg << "<rect x=\"" << num(kW - kRight + 15) << "\" y=\"" << num(y)
        << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[k % 8]
        << "\"/>\n";
    svg << "<text x=\"" << num(kW - kRight + 33) << "\" y=\"" << num(y + 10)
        << "\">" << escape_xml(methods[k].method) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_report(const std::vector<MethodRuns>& methods,
                  const fs::path& out_dir) {
  if (methods.empty()) throw EmptyInput("no metrics files to report on");
  write_text_file(out_dir / "table.csv", summary_table_csv(methods));
  write_text_file(out_dir / "bandwidth_utilization.svg",
                  utilization_svg(methods, UtilizationAxis::kBandwidth));
  write_text_file(out_dir / "density_utilization.svg",
                  utilization_svg(methods, UtilizationAxis::kDensity));
}

}  // namespace slicekit
