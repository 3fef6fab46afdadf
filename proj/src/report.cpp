// Copyright 2026 The boostbound Authors.
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

#include "boostbound/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace boostbound {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t comma; (comma = line.find(',', start)) != std::string_view::npos;
       start = comma + 1) {
    fields.push_back(line.substr(start, comma - start));
  }
  fields.push_back(line.substr(start));
  return fields;
}

template <typename Int>
Int parse_integer(std::string_view text, std::string_view what) {
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ReportError(fmt::format("sweep csv: bad {} value '{}'", what, text));
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ReportError(fmt::format("sweep csv: bad boolean '{}'", text));
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Plot area inside the 800x600 canvas.
constexpr double kLeft = 90.0;
constexpr double kRight = 770.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 530.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
};

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

double parse_real(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "+inf" || text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ReportError(fmt::format("sweep csv: bad real value '{}'", text));
  }
  return value;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& record : result.records) {
    const auto& p = record.params;
    const auto& g = record.gap_report;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", record.experiment_id,
                       to_string(p.source), p.T, p.m, p.d, format_real(p.delta), p.seed,
                       format_real(g.rho ? *g.rho : std::numeric_limits<double>::quiet_NaN()),
                       format_real(g.train_error), format_real(g.test_error),
                       format_real(g.delta_r), format_real(g.epsilon_boost),
                       g.holds ? "true" : "false", g.applicable ? "true" : "false");
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ReportError(fmt::format("cannot open '{}' for writing", path.string()));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw ReportError(fmt::format("failed writing '{}'", path.string()));
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  if (result.records.empty()) {
    throw ReportError("emit_csv: sweep has no records");
  }
  write_text_file(path, sweep_csv(result));
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ReportError(fmt::format("cannot open '{}'", path.string()));
  }
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ReportError(fmt::format("'{}' is not a sweep table (unexpected header)", path.string()));
  }
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 14) {
      throw ReportError(fmt::format("sweep csv: row has {} fields, expected 14", f.size()));
    }
    RunRecord record;
    record.experiment_id = std::string(f[0]);
    if (f[1] != "synthetic" && f[1] != "real") {
      throw ReportError(fmt::format("sweep csv: bad source '{}'", f[1]));
    }
    record.params.source = f[1] == "real" ? DataSource::real : DataSource::synthetic;
    record.params.T = parse_integer<std::size_t>(f[2], "T");
    record.params.m = parse_integer<std::size_t>(f[3], "m");
    record.params.d = parse_integer<std::size_t>(f[4], "d");
    record.params.delta = parse_real(f[5]);
    record.params.seed = parse_integer<std::uint64_t>(f[6], "seed");
    const double rho = parse_real(f[7]);
    auto& g = record.gap_report;
    g.rho = std::isnan(rho) ? std::nullopt : std::optional<double>(rho);
    g.train_error = parse_real(f[8]);
    g.test_error = parse_real(f[9]);
    g.delta_r = parse_real(f[10]);
    g.epsilon_boost = parse_real(f[11]);
    g.holds = parse_bool(f[12]);
    g.applicable = parse_bool(f[13]);
    if (result.experiment_id.empty()) {
      result.experiment_id = record.experiment_id;
    }
    result.records.push_back(std::move(record));
  }
  if (result.records.empty()) {
    throw ReportError(fmt::format("'{}' has no data rows", path.string()));
  }
  if (result.experiment_id == "t-sweep") {
    result.inapplicable_count = static_cast<std::size_t>(
        std::count_if(result.records.begin(), result.records.end(),
                      [](const RunRecord& r) { return !r.gap_report.applicable; }));
  } else {
    summarize(result);
  }
  return result;
}

std::string confidence_csv(std::span<const ConfidenceRow> rows) {
  std::string out = "label,confidence,percent\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{}\n", row.label, format_real(row.confidence), row.formatted);
  }
  return out;
}

std::string render_svg(const Figure& figure) {
  Range xr, yr;
  for (const auto* layer : {&figure.scatter, &figure.solid}) {
    for (const auto& series : *layer) {
      for (const auto& [x, y] : series.points) {
        xr.include(x);
        yr.include(y);
      }
    }
  }
  if (!figure.scatter.empty() || !figure.solid.empty()) {
    yr.include(0.0);
  }
  // Dashed curves (bounds) may sit far above the data; show at most up to
  // their lowest point, or 1 when that is higher still.
  double dashed_floor = std::numeric_limits<double>::infinity();
  for (const auto& series : figure.dashed) {
    for (const auto& [x, y] : series.points) {
      xr.include(x);
      if (std::isfinite(y)) dashed_floor = std::min(dashed_floor, y);
    }
  }
  if (std::isfinite(dashed_floor)) {
    yr.include(std::isfinite(yr.hi) ? std::min(dashed_floor, std::max(1.0, yr.hi)) : dashed_floor);
  }
  xr.settle();
  yr.settle();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
  const auto py = [&](double y) {
    const double c = std::clamp(y, yr.lo, yr.hi);
    return kBottom - (c - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };
  const auto polyline = [&](const Series& s, std::string_view extra) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fmt::format("{:.2f},{:.2f}", px(x), py(y));
    }
    return fmt::format(
        "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
        s.color, extra, pts);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += fmt::format(
      "  <text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"18\">{}</text>\n",
      escape_xml(figure.title));

  // Axes and ticks.
  svg += fmt::format(
      "  <g stroke=\"black\" stroke-width=\"1\">\n"
      "    <line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\"/>\n"
      "    <line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>\n"
      "  </g>\n",
      kLeft, kRight, kBottom, kTop);
  svg += "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / kTicks;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / kTicks;
    svg += fmt::format(
        "    <text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(fx),
        kBottom + 18.0, fx);
    svg += fmt::format(
        "    <text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6.0,
        py(fy) + 4.0, fy);
  }
  svg += "  </g>\n";
  svg += fmt::format(
      "  <text x=\"{:.2f}\" y=\"575\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"14\">{}</text>\n",
      (kLeft + kRight) / 2.0, escape_xml(figure.x_label));
  svg += fmt::format(
      "  <text x=\"22\" y=\"{0:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"14\" transform=\"rotate(-90 22 {0:.2f})\">{1}</text>\n",
      (kTop + kBottom) / 2.0, escape_xml(figure.y_label));

  for (const auto& series : figure.scatter) {
    svg += fmt::format("  <g fill=\"{}\" fill-opacity=\"0.6\">\n", series.color);
    for (const auto& [x, y] : series.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      svg += fmt::format("    <circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\"/>\n", px(x), py(y));
    }
    svg += "  </g>\n";
  }
  for (const auto& series : figure.solid) {
    svg += polyline(series, "");
  }
  for (const auto& series : figure.dashed) {
    svg += polyline(series, " stroke-dasharray=\"8,5\"");
  }

  // Legend: colored labels only, so the dashed polylines above stay the
  // only dashed elements in the document.
  double legend_y = kTop + 16.0;
  svg += "  <g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">\n";
  for (const auto* layer : {&figure.scatter, &figure.solid, &figure.dashed}) {
    for (const auto& series : *layer) {
      if (series.label.empty()) continue;
      svg += fmt::format("    <text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">{}</text>\n",
                         kRight - 8.0, legend_y, series.color, escape_xml(series.label));
      legend_y += 16.0;
    }
  }
  svg += "  </g>\n";
  svg += "</svg>\n";
  return svg;
}

Figure sweep_figure(const SweepResult& result, const std::optional<PolyFit>& fit,
                    std::span<const std::pair<double, double>> bound) {
  Figure figure;
  const auto param = std::string(swept_parameter(result.experiment_id));
  figure.title = fmt::format("{}: generalization gap vs {}", result.experiment_id, param);
  if (result.confidence) {
    figure.title += fmt::format(" (confidence {})", format_percent(*result.confidence));
  }
  figure.x_label = param;
  figure.y_label = "delta R = test error - train error";
  const auto points = gap_points(result);
  figure.scatter.push_back({"delta R", "#1f77b4", points});
  if (fit) {
    Series curve{"polynomial fit", "#2ca02c", {}};
    const auto [lo, hi] = fit->x_scale;
    constexpr int kSamples = 200;
    for (int k = 0; k <= kSamples; ++k) {
      const double x = lo + (hi - lo) * k / kSamples;
      curve.points.emplace_back(x, (*fit)(x));
    }
    figure.solid.push_back(std::move(curve));
  }
  if (!bound.empty()) {
    figure.dashed.push_back({"bound (dashed)", "#d62728", {bound.begin(), bound.end()}});
  }
  return figure;
}

Figure iteration_figure(const SweepResult& result) {
  Figure figure;
  figure.title = fmt::format("{}: errors vs number of rounds", result.experiment_id);
  figure.x_label = "T";
  figure.y_label = "misclassification rate";
  Series train{"train error", "#1f77b4", {}};
  Series test{"test error", "#2ca02c", {}};
  for (const auto& record : result.records) {
    const double t = static_cast<double>(record.params.T);
    train.points.emplace_back(t, record.gap_report.train_error);
    test.points.emplace_back(t, record.gap_report.test_error);
  }
  figure.solid.push_back(std::move(train));
  figure.solid.push_back(std::move(test));
  return figure;
}

void emit_svg(const SweepResult& result, const std::optional<PolyFit>& fit,
              std::span<const std::pair<double, double>> bound, const std::filesystem::path& path) {
  if (result.records.empty()) {
    throw ReportError("emit_svg: sweep has no records");
  }
  write_text_file(path, render_svg(sweep_figure(result, fit, bound)));
}

std::string default_svg(const SweepResult& result) {
  if (result.experiment_id == "t-sweep") {
    return render_svg(iteration_figure(result));
  }
  const auto curve = bound_curve(result);
  return render_svg(sweep_figure(result, display_fit(result), curve));
}

}  // namespace boostbound
