//
// Copyright 2026 The DPCov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpcov/results_writer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dpcov/config_file.h"
#include "dpcov/matrix_io.h"
#include "dpcov/status_macros.h"

namespace dpcov {
namespace {

namespace fs = std::filesystem;

constexpr NormKind kAllNorms[] = {NormKind::kL1, NormKind::kL2,
                                  NormKind::kLinf};

std::string CsvField(absl::string_view s) {
  if (s.find_first_of(",\"\n") == absl::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string FileSafe(absl::string_view label) {
  std::string out(label);
  for (char& ch : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                    ch == '.' || ch == '=' || ch == '-' || ch == '_';
    if (!ok) ch = '_';
  }
  return out;
}

double MeanOf(const SummaryRow& row, NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return row.mean_l1;
    case NormKind::kL2:
      return row.mean_l2;
    case NormKind::kLinf:
      return row.mean_linf;
  }
  return 0;
}

double StdOf(const SummaryRow& row, NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return row.std_l1;
    case NormKind::kL2:
      return row.std_l2;
    case NormKind::kLinf:
      return row.std_linf;
  }
  return 0;
}

// Summary rows grouped by series label, in first-appearance order.
std::vector<std::pair<std::string, std::vector<const SummaryRow*>>>
GroupBySeries(const ExperimentResult& result) {
  std::vector<std::pair<std::string, std::vector<const SummaryRow*>>> groups;
  for (const SummaryRow& row : result.summary) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.first == row.series;
    });
    if (it == groups.end()) {
      groups.push_back({row.series, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back(&row);
  }
  return groups;
}

std::string SeriesCsv(const std::string& label,
                      const std::vector<const SummaryRow*>& rows,
                      NormKind norm) {
  std::string out = "n,series,mean_rel_err,std\n";
  for (const SummaryRow* row : rows) {
    absl::StrAppend(&out, row->point.n, ",", CsvField(label), ",",
                    FormatDouble(MeanOf(*row, norm)), ",",
                    FormatDouble(StdOf(*row, norm)), "\n");
  }
  return out;
}

std::string TimingsCsv(const ExperimentResult& result) {
  std::string out = "grid,trial,wall_time_ms\n";
  for (const TrialRecord& r : result.trials) {
    absl::StrAppend(&out, r.grid_index, ",", r.trial, ",",
                    absl::StrFormat("%.3f", r.wall_time_ms), "\n");
  }
  return out;
}

absl::Status WriteText(const fs::path& path, const std::string& text,
                       std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("cannot open ", path.string(), " for writing"));
  }
  out << text;
  out.close();
  if (!out) {
    return absl::DataLossError(absl::StrCat("write failed: ", path.string()));
  }
  written.push_back(path.string());
  return absl::OkStatus();
}

absl::Status MakeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create directory ", dir.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

}  // namespace

std::string TrialsCsv(const ExperimentResult& result) {
  std::string out =
      "algorithm,p,sr,epsilon,delta,n,trial,seed,rel_err_l1,rel_err_l2,"
      "rel_err_linf,min_eigenvalue,failed,frac_rows_norm_gt1,"
      "abs_err_l2_projected,abs_err_l2_thresholded,projection_bound_ok,"
      "norm_order_ok,error\n";
  const absl::string_view algorithm = AlgorithmName(result.config.algorithm);
  for (const TrialRecord& r : result.trials) {
    absl::StrAppend(
        &out, algorithm, ",", r.p, ",", FormatDouble(r.sr), ",",
        FormatDouble(r.epsilon), ",", FormatDouble(r.delta), ",", r.n, ",",
        r.trial, ",", r.seed, ",");
    absl::StrAppend(&out, FormatDouble(r.rel_err_l1), ",",
                    FormatDouble(r.rel_err_l2), ",",
                    FormatDouble(r.rel_err_linf), ",",
                    FormatDouble(r.min_eigenvalue), ",", r.failed ? 1 : 0, ",",
                    FormatDouble(r.fraction_rows_outside_unit_ball), ",");
    absl::StrAppend(&out, FormatDouble(r.abs_err_l2_projected), ",",
                    FormatDouble(r.abs_err_l2_thresholded), ",",
                    r.projection_bound_ok ? 1 : 0, ",",
                    r.norm_order_ok ? 1 : 0, ",", CsvField(r.error), "\n");
  }
  return out;
}

std::string SummaryCsv(const ExperimentResult& result) {
  std::string out =
      "algorithm,series,p,sr,epsilon,delta,n,trials_ok,failed,mean_l1,std_l1,"
      "mean_l2,std_l2,mean_linf,std_linf\n";
  const absl::string_view algorithm = AlgorithmName(result.config.algorithm);
  for (const SummaryRow& row : result.summary) {
    const GridPoint& g = row.point;
    absl::StrAppend(&out, algorithm, ",", CsvField(row.series), ",", g.p, ",",
                    FormatDouble(g.sr), ",", FormatDouble(g.epsilon), ",",
                    FormatDouble(g.delta), ",", g.n, ",", row.trials_ok, ",",
                    row.failed, ",");
    absl::StrAppend(&out, FormatDouble(row.mean_l1), ",",
                    FormatDouble(row.std_l1), ",", FormatDouble(row.mean_l2),
                    ",", FormatDouble(row.std_l2), ",",
                    FormatDouble(row.mean_linf), ",",
                    FormatDouble(row.std_linf), "\n");
  }
  return out;
}

std::string RenderSvgFigure(const ExperimentResult& result, NormKind norm) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;
  constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                      "#ff7f0e", "#9467bd", "#8c564b",
                                      "#e377c2", "#7f7f7f"};
  const auto groups = GroupBySeries(result);

  double n_min = INFINITY, n_max = -INFINITY, y_max = 0;
  for (const SummaryRow& row : result.summary) {
    n_min = std::min(n_min, static_cast<double>(row.point.n));
    n_max = std::max(n_max, static_cast<double>(row.point.n));
    y_max = std::max(y_max, MeanOf(row, norm) + StdOf(row, norm));
  }
  if (!(y_max > 0)) y_max = 1;
  y_max *= 1.05;
  const double lx_min = std::log(n_min);
  const double lx_span = std::max(std::log(n_max) - lx_min, 1e-12);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](double n) {
    return kLeft + plot_w * (std::log(n) - lx_min) / lx_span;
  };
  auto y_of = [&](double v) { return kTop + plot_h * (1.0 - v / y_max); };

  std::string svg = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  absl::StrAppendFormat(
      &svg, "<text x=\"%g\" y=\"22\" text-anchor=\"middle\">%s, %s relative "
            "error vs n</text>\n",
      kLeft + plot_w / 2, AlgorithmName(result.config.algorithm),
      NormName(norm));
  absl::StrAppendFormat(
      &svg,
      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
      kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h, kLeft, kTop, kLeft,
      kTop + plot_h);
  for (int64_t n : result.config.n_grid) {
    const double x = x_of(static_cast<double>(n));
    absl::StrAppendFormat(
        &svg,
        "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"black\"/>"
        "<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\">%d</text>\n",
        x, kTop + plot_h, x, kTop + plot_h + 5, x, kTop + plot_h + 20, n);
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = y_max * k / 4.0;
    absl::StrAppendFormat(
        &svg,
        "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"black\"/>"
        "<text x=\"%g\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n",
        kLeft - 5, y_of(v), kLeft, y_of(v), kLeft - 8, y_of(v) + 4, v);
  }
  absl::StrAppendFormat(&svg,
                        "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">n "
                        "(log scale)</text>\n",
                        kLeft + plot_w / 2, kHeight - 15);

  for (size_t s = 0; s < groups.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::vector<std::string> points;
    for (const SummaryRow* row : groups[s].second) {
      if (row->trials_ok == 0) continue;
      points.push_back(absl::StrFormat("%.2f,%.2f",
                                       x_of(static_cast<double>(row->point.n)),
                                       y_of(MeanOf(*row, norm))));
    }
    absl::StrAppendFormat(
        &svg,
        "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"2\" "
        "points=\"%s\"/>\n",
        color, absl::StrJoin(points, " "));
    for (const std::string& pt : points) {
      const size_t comma = pt.find(',');
      absl::StrAppendFormat(&svg,
                            "<circle cx=\"%s\" cy=\"%s\" r=\"3\" fill=\"%s\"/>\n",
                            pt.substr(0, comma), pt.substr(comma + 1), color);
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
    absl::StrAppendFormat(
        &svg,
        "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
        "stroke-width=\"2\"/><text x=\"%g\" y=\"%g\">%s</text>\n",
        kLeft + plot_w + 15, ly, kLeft + plot_w + 35, ly, color,
        kLeft + plot_w + 40, ly + 4, groups[s].first);
  }
  svg += "</svg>\n";
  return svg;
}

absl::StatusOr<std::vector<std::string>> EmitResults(
    const ExperimentResult& result, const std::string& out_dir,
    const EmitOptions& options) {
  if (result.trials.empty()) {
    return absl::InvalidArgumentError("no trial records to write");
  }
  const fs::path root(out_dir);
  DPCOV_RETURN_IF_ERROR(MakeDirs(root));

  std::vector<std::string> written;
  DPCOV_RETURN_IF_ERROR(WriteText(root / "trials.csv", TrialsCsv(result),
                                  written));
  DPCOV_RETURN_IF_ERROR(WriteText(root / "timings.csv", TimingsCsv(result),
                                  written));
  DPCOV_RETURN_IF_ERROR(WriteText(root / "summary.csv", SummaryCsv(result),
                                  written));
  DPCOV_RETURN_IF_ERROR(WriteText(root / "config.toml",
                                  SerializeConfig(result.config), written));

  const auto groups = GroupBySeries(result);
  for (NormKind norm : kAllNorms) {
    const fs::path dir = root / "series" / std::string(NormName(norm));
    DPCOV_RETURN_IF_ERROR(MakeDirs(dir));
    for (const auto& [label, rows] : groups) {
      DPCOV_RETURN_IF_ERROR(WriteText(dir / (FileSafe(label) + ".csv"),
                                      SeriesCsv(label, rows, norm), written));
    }
    if (options.svg) {
      DPCOV_RETURN_IF_ERROR(WriteText(
          root / absl::StrCat("figure_", NormName(norm), ".svg"),
          RenderSvgFigure(result, norm), written));
    }
  }
  return written;
}

}  // namespace dpcov
