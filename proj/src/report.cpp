// Copyright 2026 The partmon Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "partmon/report.hpp"

#include <cfenv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "partmon/coco_io.hpp"

namespace partmon {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

// CSV cells never need quoting unless they carry a separator or quote.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_ratio(double value) {
  if (!std::isfinite(value)) return "0.0000";
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  auto scaled = static_cast<long long>(std::nearbyint(value * 10000.0));
  std::fesetround(saved);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string frac = std::to_string(scaled % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  std::string out = negative ? "-" : "";
  out += std::to_string(scaled / 10000) + "." + frac;
  return out;
}

std::vector<PerImageRow> per_image_rows(const std::string& system,
                                        const AlertCounts& counts) {
  return {
      {system, "FP", counts.fp_alert, binary_metrics(counts.fp_alert)},
      {system, "FN", counts.fn_alert, binary_metrics(counts.fn_alert)},
  };
}

std::string render_report(const PerImageReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "system,alert,tp,fp,fn,tn,precision,recall,mcc\n";
    for (const auto& r : report.rows) {
      out << csv_cell(r.system) << ',' << csv_cell(r.alert) << ',' << r.counts.tp
          << ',' << r.counts.fp << ',' << r.counts.fn << ',' << r.counts.tn << ','
          << format_ratio(r.metrics.precision) << ','
          << format_ratio(r.metrics.recall) << ',' << format_ratio(r.metrics.mcc)
          << '\n';
    }
    return out.str();
  }

  out << "{\n  \"manifest\": " << quote(report.manifest) << ",\n"
      << "  \"protocol\": \"per-image\",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << (i ? ",\n" : "\n") << "    {\"alert\": " << quote(r.alert)
        << ", \"fn\": " << r.counts.fn << ", \"fp\": " << r.counts.fp
        << ", \"mcc\": " << format_ratio(r.metrics.mcc)
        << ", \"precision\": " << format_ratio(r.metrics.precision)
        << ", \"recall\": " << format_ratio(r.metrics.recall)
        << ", \"system\": " << quote(r.system) << ", \"tn\": " << r.counts.tn
        << ", \"tp\": " << r.counts.tp << "}";
  }
  out << (report.rows.empty() ? "" : "\n  ") << "],\n"
      << "  \"total_images\": " << report.total_images << "\n}\n";
  return out.str();
}

std::string render_report(const PerObjectReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "system,tp_gt_tp_mon,tp_gt_fp_mon,fp_gt_tp_mon,fp_gt_fp_mon,"
           "fn_gt_fn_mon,tn_gt_fn_mon,fp_balance,fn_balance\n";
    for (const auto& r : report.rows) {
      const auto& c = r.confusion;
      out << csv_cell(r.system) << ',' << c.tp_gt_tp_mon << ',' << c.tp_gt_fp_mon
          << ',' << c.fp_gt_tp_mon << ',' << c.fp_gt_fp_mon << ',' << c.fn_gt_fn_mon
          << ',' << c.tn_gt_fn_mon << ',' << r.balances.fp_balance << ','
          << r.balances.fn_balance << '\n';
    }
    return out.str();
  }

  out << "{\n  \"manifest\": " << quote(report.manifest) << ",\n"
      << "  \"protocol\": \"per-object\",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    const auto& c = r.confusion;
    out << (i ? ",\n" : "\n") << "    {\"fn_balance\": " << r.balances.fn_balance
        << ", \"fn_gt_fn_mon\": " << c.fn_gt_fn_mon
        << ", \"fp_balance\": " << r.balances.fp_balance
        << ", \"fp_gt_fp_mon\": " << c.fp_gt_fp_mon
        << ", \"fp_gt_tp_mon\": " << c.fp_gt_tp_mon
        << ", \"system\": " << quote(r.system)
        << ", \"tn_gt_fn_mon\": " << c.tn_gt_fn_mon
        << ", \"tp_gt_fp_mon\": " << c.tp_gt_fp_mon
        << ", \"tp_gt_tp_mon\": " << c.tp_gt_tp_mon << "}";
  }
  out << (report.rows.empty() ? "" : "\n  ") << "]\n}\n";
  return out.str();
}

void emit_report(const PerImageReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  write_file(path, render_report(report, format));
}

void emit_report(const PerObjectReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  write_file(path, render_report(report, format));
}

}  // namespace partmon
