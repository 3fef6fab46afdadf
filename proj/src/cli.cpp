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

#include "boostbound/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "boostbound/bound.hpp"
#include "boostbound/dataset.hpp"
#include "boostbound/experiments.hpp"
#include "boostbound/report.hpp"
#include "boostbound/rng.hpp"

namespace boostbound::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kManifestName = "manifest.txt";

/// Malformed config file: a usage error.
class ConfigSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run that completed but cannot be judged (e.g. every cell outside the
/// bound's range).
class RunFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::pair<std::string, std::string>> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ReportError(fmt::format("cannot open config file '{}'", path.string()));
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigSyntaxError(
          fmt::format("{}:{}: expected 'key = value', got '{}'", path.string(), number, line));
    }
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

/// Expands `--config FILE` into explicit arguments. Command-line flags win.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw ConfigSyntaxError("--config requires a file argument");
      }
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) {
    return args;
  }
  const auto entries = read_config(*config_path);
  std::vector<std::string> expanded;
  const bool needs_command = rest.empty() || rest.front().rfind("-", 0) == 0;
  if (needs_command) {
    const auto find = [&](std::string_view key) -> std::optional<std::string> {
      for (const auto& [k, v] : entries) {
        if (k == key) return v;
      }
      return std::nullopt;
    };
    const auto command = find("command");
    if (!command) {
      throw ConfigSyntaxError(
          fmt::format("config '{}' has no 'command' and none was given", *config_path));
    }
    expanded.push_back(*command);
    if (const auto mode = find("mode")) {
      expanded.push_back(*mode);
    }
  }
  expanded.insert(expanded.end(), rest.begin(), rest.end());
  for (const auto& [key, value] : entries) {
    if (key == "command" || key == "mode" || value.empty() || has_flag(rest, key)) {
      continue;
    }
    expanded.push_back("--" + key);
    expanded.push_back(value);
  }
  return expanded;
}

std::string to_text(const std::string& v) { return v; }
std::string to_text(double v) { return format_real(v); }
template <typename T>
  requires std::is_integral_v<T>
std::string to_text(T v) {
  return fmt::format("{}", v);
}

/// Registers flags and remembers them, in order, for the manifest.
class FlagRegistry {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* app, const std::string& key, T& target, const std::string& help) {
    entries_[app].push_back({key, [&target] { return to_text(target); }});
    return app->add_option("--" + key, target, help)->capture_default_str();
  }

  std::string manifest(CLI::App* app, std::string_view command, std::string_view mode) const {
    std::string text = "# boostbound run manifest; replay with: boostbound --config <this file>\n";
    text += fmt::format("command = {}\n", command);
    if (!mode.empty()) {
      text += fmt::format("mode = {}\n", mode);
    }
    if (const auto it = entries_.find(app); it != entries_.end()) {
      for (const auto& [key, value] : it->second) {
        text += fmt::format("{} = {}\n", key, value());
      }
    }
    return text;
  }

 private:
  struct Entry {
    std::string key;
    std::function<std::string()> value;
  };
  std::map<CLI::App*, std::vector<Entry>> entries_;
};

std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ReportError(fmt::format("cannot create output directory '{}'", out));
  }
  return dir;
}

std::string first_header_field(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) {
    throw DataError(fmt::format("load_csv: cannot read header of '{}'", path));
  }
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  return trim(line.substr(0, line.find(',')));
}

struct RealDataFlags {
  std::string data;
  std::string target_column;
  std::string positive_value = "1";
  std::size_t subsample = 0;

  Dataset load(std::uint64_t seed) const {
    const std::string target = target_column.empty() ? first_header_field(data) : target_column;
    Dataset dataset = load_csv(data, target, positive_value);
    if (subsample > 0) {
      dataset = subsample_rows(dataset, subsample, derive_seed(seed, seed_stream::kSubsample, 0));
    }
    return dataset;
  }
};

std::string report_text(const GapReport& r, std::size_t d, std::size_t m, double delta) {
  return fmt::format(
      "d = {}\nm = {}\ndelta = {}\ntrain_error = {}\ntest_error = {}\ndelta_r = {}\nrho = {}\n"
      "epsilon_boost = {}\nholds = {}\napplicable = {}\n",
      d, m, format_real(delta), format_real(r.train_error), format_real(r.test_error),
      format_real(r.delta_r), r.rho ? format_real(*r.rho) : "undefined",
      format_real(r.epsilon_boost), r.holds ? "true" : "false", r.applicable ? "true" : "false");
}

void require_applicable(const SweepResult& result) {
  if (result.confidence || result.records.empty()) {
    return;
  }
  const auto& p = result.records.front().params;
  throw RunFailure(fmt::format(
      "{}: every cell is outside the bound's range (d > e*m), first cell d={} m={}",
      result.experiment_id, p.d, p.m));
}

void write_sweep(const SweepResult& result, const fs::path& dir, const std::string& stem,
                 std::ostream& out) {
  const fs::path csv = dir / (stem + ".csv");
  const fs::path svg = dir / (stem + ".svg");
  emit_csv(result, csv);
  write_text_file(svg, default_svg(result));
  out << fmt::format("{}: {} records", result.experiment_id, result.records.size());
  if (result.confidence) {
    out << fmt::format(", confidence {}", format_percent(*result.confidence));
  }
  if (result.inapplicable_count > 0) {
    out << fmt::format(", {} inapplicable", result.inapplicable_count);
  }
  out << fmt::format("\n  {}\n  {}\n", csv.string(), svg.string());
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> argv;
  try {
    argv = apply_config(args);
  } catch (const ConfigSyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  CLI::App app{"AdaBoost margin-bound experiments", "boostbound"};
  app.require_subcommand(1);
  FlagRegistry flags;

  // Shared flag defaults.
  std::uint64_t seed = 42;
  double delta = kDefaultDelta;
  std::size_t epochs = 10;
  std::size_t workers = default_workers();
  std::string out_dir = "results";

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic two-cluster dataset as CSV");
  std::size_t gen_d = 25, gen_m = 1000;
  flags.add(gen, "d", gen_d, "VC-dimension; the data has d-1 features");
  flags.add(gen, "m", gen_m, "Number of rows");
  flags.add(gen, "seed", seed, "Master seed");
  flags.add(gen, "out", out_dir, "Output directory");

  // train
  auto* train = app.add_subcommand("train", "Boost once and report the gap and bound");
  std::size_t train_d = 25, train_m = 1000, train_rounds = 50;
  RealDataFlags train_real;
  flags.add(train, "d", train_d, "VC-dimension for synthetic data (d-1 features)");
  flags.add(train, "m", train_m, "Training-set size for synthetic data");
  flags.add(train, "t-max", train_rounds, "Boosting rounds");
  flags.add(train, "epochs", epochs, "Perceptron epochs per round");
  flags.add(train, "delta", delta, "Confidence parameter");
  flags.add(train, "seed", seed, "Master seed");
  flags.add(train, "data", train_real.data, "CSV file; synthetic data when empty");
  flags.add(train, "target-column", train_real.target_column, "Label column (default: first)");
  flags.add(train, "positive-value", train_real.positive_value, "Label value mapped to +1");
  flags.add(train, "subsample", train_real.subsample, "Use a random subset of rows (0 = all)");
  flags.add(train, "out", out_dir, "Output directory");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate the margin bound epsilon_boost");
  double bound_rho = 0.0;
  std::size_t bound_d = 25, bound_m = 1000;
  std::string bound_out;
  flags.add(bound, "rho", bound_rho, "L1-geometric margin")->required();
  flags.add(bound, "d", bound_d, "VC-dimension of the base family");
  flags.add(bound, "m", bound_m, "Training sample size");
  flags.add(bound, "delta", delta, "Confidence parameter");
  flags.add(bound, "out", bound_out, "Optional output directory for bound.txt and manifest");

  // plot
  auto* plot = app.add_subcommand("plot", "Render the SVG figure of a sweep CSV");
  std::string plot_data;
  flags.add(plot, "data", plot_data, "Sweep CSV written by 'exp'")->required();
  flags.add(plot, "out", out_dir, "Output directory");

  // exp
  auto* exp = app.add_subcommand("exp", "Run an experiment sweep");
  exp->require_subcommand(1);
  const auto add_run_flags = [&](CLI::App* sub, std::size_t& rounds, std::size_t& repeats) {
    flags.add(sub, "t-max", rounds, "Boosting rounds per cell");
    flags.add(sub, "repeats", repeats, "Independent runs per grid value");
    flags.add(sub, "epochs", epochs, "Perceptron epochs per round");
    flags.add(sub, "delta", delta, "Confidence parameter");
    flags.add(sub, "seed", seed, "Master seed");
    flags.add(sub, "workers", workers, "Worker threads (never affects results)");
    flags.add(sub, "out", out_dir, "Output directory");
  };

  auto* t_sweep = exp->add_subcommand("t-sweep", "Train/test error against the number of rounds");
  std::size_t ts_d = 50, ts_m = 1000, ts_tmax = 100, ts_repeats = 100;
  flags.add(t_sweep, "d", ts_d, "VC-dimension (d-1 features)");
  flags.add(t_sweep, "m", ts_m, "Training-set size");
  add_run_flags(t_sweep, ts_tmax, ts_repeats);

  auto* m_sweep = exp->add_subcommand("m-sweep", "Gap and bound against training-set size");
  std::size_t ms_d = 25, ms_rounds = 50, ms_repeats = 1;
  Grid ms_grid{10, 10000, 10};
  flags.add(m_sweep, "d", ms_d, "VC-dimension (d-1 features)");
  flags.add(m_sweep, "m-min", ms_grid.first, "First m");
  flags.add(m_sweep, "m-max", ms_grid.last, "Last m");
  flags.add(m_sweep, "m-step", ms_grid.step, "m step");
  add_run_flags(m_sweep, ms_rounds, ms_repeats);

  auto* d_sweep = exp->add_subcommand("d-sweep", "Gap and bound against VC-dimension");
  std::size_t ds_m = 500, ds_rounds = 50, ds_repeats = 1;
  Grid ds_grid{5, 1000, 5};
  flags.add(d_sweep, "m", ds_m, "Training-set size");
  flags.add(d_sweep, "d-min", ds_grid.first, "First d");
  flags.add(d_sweep, "d-max", ds_grid.last, "Last d");
  flags.add(d_sweep, "d-step", ds_grid.step, "d step");
  add_run_flags(d_sweep, ds_rounds, ds_repeats);

  const auto add_real_flags = [&](CLI::App* sub, RealDataFlags& real) {
    flags.add(sub, "data", real.data, "CSV file")->required();
    flags.add(sub, "target-column", real.target_column, "Label column (default: first)");
    flags.add(sub, "positive-value", real.positive_value, "Label value mapped to +1");
    flags.add(sub, "subsample", real.subsample, "Use a random subset of rows (0 = all)");
  };

  auto* real_m = exp->add_subcommand("real-m", "Real data: gap and bound against m");
  RealDataFlags rm_real;
  std::size_t rm_rounds = 50, rm_repeats = 1;
  Grid rm_grid{50, 126840, 50};
  add_real_flags(real_m, rm_real);
  flags.add(real_m, "m-min", rm_grid.first, "First m");
  flags.add(real_m, "m-max", rm_grid.last, "Last m");
  flags.add(real_m, "m-step", rm_grid.step, "m step");
  add_run_flags(real_m, rm_rounds, rm_repeats);

  auto* real_d = exp->add_subcommand("real-d", "Real data: gap and bound against d");
  RealDataFlags rd_real;
  std::size_t rd_rounds = 50, rd_repeats = 1;
  Grid rd_grid{2, 22, 1};
  add_real_flags(real_d, rd_real);
  flags.add(real_d, "d-min", rd_grid.first, "First d");
  flags.add(real_d, "d-max", rd_grid.last, "Last d");
  flags.add(real_d, "d-step", rd_grid.step, "d step");
  add_run_flags(real_d, rd_rounds, rd_repeats);

  auto* conf = exp->add_subcommand(
      "confidence", "Confidence table: m-sweeps at d=25,50,75,100 and d-sweeps at m=500..2000");
  std::size_t cf_rounds = 50, cf_repeats = 3;
  Grid cf_m_grid{10, 2000, 50};
  Grid cf_d_grid{5, 200, 15};
  flags.add(conf, "m-min", cf_m_grid.first, "First m of the m-sweeps");
  flags.add(conf, "m-max", cf_m_grid.last, "Last m of the m-sweeps");
  flags.add(conf, "m-step", cf_m_grid.step, "m step");
  flags.add(conf, "d-min", cf_d_grid.first, "First d of the d-sweeps");
  flags.add(conf, "d-max", cf_d_grid.last, "Last d of the d-sweeps");
  flags.add(conf, "d-step", cf_d_grid.step, "d step");
  add_run_flags(conf, cf_rounds, cf_repeats);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* shown = &app;
    while (!shown->get_subcommands().empty()) shown = shown->get_subcommands().front();
    out << shown->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* shown = &app;
    while (!shown->get_subcommands().empty()) shown = shown->get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << shown->help();
    return kExitUsage;
  }

  const auto options_for = [&](std::size_t rounds, std::size_t repeats) {
    SweepOptions options;
    options.rounds = rounds;
    options.epochs = epochs;
    options.repeats = repeats;
    options.delta = delta;
    options.master_seed = seed;
    options.workers = workers;
    return options;
  };

  try {
    if (gen->parsed()) {
      const auto dir = prepare_out_dir(out_dir);
      write_text_file(dir / kManifestName, flags.manifest(gen, "gen", ""));
      if (gen_d < 2) throw DataError("gen: d must be >= 2");
      SyntheticConfig config;
      config.n_features = gen_d - 1;
      config.m_total = gen_m;
      config.seed = derive_seed(seed, seed_stream::kData, 0);
      const auto data = generate_synthetic(config);
      std::string csv = "y";
      for (std::size_t j = 1; j <= data.cols(); ++j) csv += fmt::format(",x{}", j);
      csv += '\n';
      for (std::size_t i = 0; i < data.rows(); ++i) {
        csv += fmt::format("{}", data.label(i));
        for (const double v : data.row(i)) csv += "," + format_real(v);
        csv += '\n';
      }
      write_text_file(dir / "synthetic.csv", csv);
      out << (dir / "synthetic.csv").string() << "\n";
      return kExitOk;
    }

    if (train->parsed()) {
      const auto dir = prepare_out_dir(out_dir);
      write_text_file(dir / kManifestName, flags.manifest(train, "train", ""));
      SplitPair split;
      std::size_t d = train_d;
      if (!train_real.data.empty()) {
        const auto dataset = train_real.load(seed);
        d = dataset.cols() + 1;
        split = split_half(dataset, derive_seed(seed, seed_stream::kSplit, 0));
      } else {
        if (train_d < 2) throw DataError("train: d must be >= 2");
        SyntheticConfig config;
        config.n_features = train_d - 1;
        config.m_total = 2 * train_m;
        config.seed = derive_seed(seed, seed_stream::kData, 0);
        split = split_half(generate_synthetic(config), derive_seed(seed, seed_stream::kSplit, 0));
      }
      BoostConfig config;
      config.rounds = train_rounds;
      config.weak.epochs = epochs;
      config.weak.seed = derive_seed(seed, seed_stream::kBoost, 0);
      config.keep_distributions = false;
      const auto trace = train_adaboost(split.train, config);
      const auto report = check_bound_or_mark(
          misclassification_rate(trace.ensemble, split.train),
          misclassification_rate(trace.ensemble, split.test),
          l1_margin(trace.ensemble, split.train), d, split.train.rows(), delta);
      const auto text = report_text(report, d, split.train.rows(), delta);
      write_text_file(dir / "report.txt", text);
      out << text;
      return kExitOk;
    }

    if (bound->parsed()) {
      if (!bound_out.empty()) {
        const auto dir = prepare_out_dir(bound_out);
        write_text_file(dir / kManifestName, flags.manifest(bound, "bound", ""));
      }
      double value = 0.0;
      try {
        value = epsilon_boost({bound_rho, bound_d, bound_m, delta});
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << bound->help();
        return kExitUsage;
      }
      const auto text = format_real(value) + "\n";
      if (!bound_out.empty()) {
        write_text_file(fs::path(bound_out) / "bound.txt", text);
      }
      out << text;
      return kExitOk;
    }

    if (plot->parsed()) {
      const auto dir = prepare_out_dir(out_dir);
      write_text_file(dir / kManifestName, flags.manifest(plot, "plot", ""));
      const auto result = read_sweep_csv(plot_data);
      const auto svg = dir / (fs::path(plot_data).stem().string() + ".svg");
      write_text_file(svg, default_svg(result));
      out << svg.string() << "\n";
      return kExitOk;
    }

    // exp
    CLI::App* mode = exp->get_subcommands().front();
    const auto dir = prepare_out_dir(out_dir);
    write_text_file(dir / kManifestName, flags.manifest(mode, "exp", mode->get_name()));

    if (mode == t_sweep) {
      const auto result = run_iteration_sweep(ts_d, ts_m, ts_tmax, options_for(ts_tmax, ts_repeats));
      write_sweep(result, dir, "t-sweep", out);
    } else if (mode == m_sweep) {
      const auto result = run_sample_size_sweep(ms_d, ms_grid, options_for(ms_rounds, ms_repeats));
      write_sweep(result, dir, "m-sweep", out);
      require_applicable(result);
    } else if (mode == d_sweep) {
      const auto result = run_dimension_sweep(ds_m, ds_grid, options_for(ds_rounds, ds_repeats));
      write_sweep(result, dir, "d-sweep", out);
      require_applicable(result);
    } else if (mode == real_m || mode == real_d) {
      const bool by_m = mode == real_m;
      const auto& real = by_m ? rm_real : rd_real;
      const auto dataset = real.load(seed);
      const auto result = by_m ? run_real_data(dataset, RealMode::m_sweep, rm_grid,
                                               options_for(rm_rounds, rm_repeats))
                               : run_real_data(dataset, RealMode::d_sweep, rd_grid,
                                               options_for(rd_rounds, rd_repeats));
      write_sweep(result, dir, result.experiment_id, out);
      require_applicable(result);
    } else {
      const auto options = options_for(cf_rounds, cf_repeats);
      std::vector<std::pair<std::string, SweepResult>> sweeps;
      for (const std::size_t d : {25, 50, 75, 100}) {
        auto result = run_sample_size_sweep(d, cf_m_grid, options);
        write_sweep(result, dir, fmt::format("m-sweep_d{}", d), out);
        require_applicable(result);
        sweeps.emplace_back(fmt::format("m-sweep d={}", d), std::move(result));
      }
      for (const std::size_t m : {500, 1000, 1500, 2000}) {
        auto result = run_dimension_sweep(m, cf_d_grid, options);
        write_sweep(result, dir, fmt::format("d-sweep_m{}", m), out);
        require_applicable(result);
        sweeps.emplace_back(fmt::format("d-sweep m={}", m), std::move(result));
      }
      const auto rows = confidence_table(sweeps);
      write_text_file(dir / "confidence.csv", confidence_csv(rows));
      out << "\nexperiment      confidence\n";
      for (const auto& row : rows) {
        out << fmt::format("{:<16}{:>10}\n", row.label, row.formatted);
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace boostbound::cli
