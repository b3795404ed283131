// Copyright 2026 The acgl Authors.
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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "acgl/config.h"
#include "acgl/dataset_io.h"
#include "acgl/error.h"
#include "acgl/harness.h"
#include "acgl/metrics.h"
#include "acgl/report.h"
#include "acgl/serialize.h"
#include "acgl/synthetic.h"

namespace acgl::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  // run / sweep
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  bool save_model = false;
  // sweep
  std::string axis;
  std::vector<std::string> values;
  // gen-synth
  SyntheticSpec synth;
  // validate-dataset
  std::string data_dir;
};

std::string ConfigKeyFooter() {
  std::ostringstream s;
  s << "Config keys (file or --set key=value):\n";
  for (const ConfigKey& key : ConfigRegistry()) {
    s << "  " << key.name << " (" << ValueTypeName(key.type) << "): "
      << key.help << "\n";
  }
  return s.str();
}

void AddExperimentFlags(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "experiment config file")
      ->required();
  sub->add_option("--out", o.out_dir, "output directory")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "global seed (overrides the config)");
  sub->add_option("--set", o.overrides,
                  "config override key=value (repeatable)")
      ->allow_extra_args(false);
  sub->footer(ConfigKeyFooter());
}

std::unique_ptr<CLI::App> BuildApp(Options& o) {
  auto app = std::make_unique<CLI::App>(
      "Class-incremental node classification with a frozen GCN backbone and "
      "a recursively updated closed-form classifier.",
      "acgl");
  app->require_subcommand(1);

  CLI::App* run = app->add_subcommand("run", "run one experiment");
  AddExperimentFlags(run, o);
  run->add_flag("--save-model", o.save_model,
                "also write backbone.bin, expander.bin and state.bin");

  CLI::App* sweep = app->add_subcommand(
      "sweep", "run one experiment per value of a hyperparameter");
  AddExperimentFlags(sweep, o);
  sweep->add_option("--axis", o.axis, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"feg_dim", "gamma"}));
  sweep->add_option("--values", o.values, "comma-separated values")
      ->required()
      ->delimiter(',');

  CLI::App* gen = app->add_subcommand("gen-synth",
                                      "write a synthetic dataset directory");
  gen->add_option("--classes", o.synth.num_classes, "number of classes")
      ->capture_default_str();
  gen->add_option("--nodes-per-class", o.synth.nodes_per_class,
                  "nodes in each class")
      ->capture_default_str();
  gen->add_option("--dim", o.synth.feature_dim, "feature dimension")
      ->capture_default_str();
  gen->add_option("--homophily", o.synth.homophily,
                  "fraction of intra-class edges")
      ->capture_default_str();
  gen->add_option("--avg-degree", o.synth.avg_degree, "mean node degree")
      ->capture_default_str();
  gen->add_option("--separation", o.synth.class_separation,
                  "std of class mean vectors")
      ->capture_default_str();
  gen->add_option("--noise", o.synth.feature_noise, "std of feature noise")
      ->capture_default_str();
  gen->add_option("--seed", o.synth.seed, "generator seed")
      ->capture_default_str();
  gen->add_option("--out", o.out_dir, "output dataset directory")->required();

  CLI::App* validate = app->add_subcommand(
      "validate-dataset", "load a dataset directory and print its statistics");
  validate->add_option("--data", o.data_dir, "dataset directory")->required();
  return app;
}

ExperimentConfig ResolveConfig(const Options& o) {
  ExperimentConfig config = LoadConfigFile(o.config_path);
  if (o.seed) config.seeds.global = *o.seed;
  for (const std::string& assignment : o.overrides) {
    ApplyOverride(config, assignment);
  }
  ValidateExperimentConfig(config);
  return config;
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
  return buf;
}

void PrintSummary(const RunReport& report, std::ostream& out) {
  out << "AP " << Percent(report.average_performance) << "  AF "
      << (report.average_forgetting ? Percent(*report.average_forgetting)
                                    : std::string("n/a"))
      << "  sessions " << report.matrix.num_sessions() << "  train time "
      << report.timings.TrainingTotal() << " s\n";
}

int CmdRun(const Options& o, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(o);
  const ExperimentResult result = RunExperiment(config);
  const RunReport report =
      MakeRunReport(result.matrix, result.timings, DescribeConfig(config));
  EmitReport(report, o.out_dir);
  if (o.save_model) {
    WriteBinaryFile(fs::path(o.out_dir) / "backbone.bin",
                    EncodeBackbone(result.backbone));
    WriteBinaryFile(fs::path(o.out_dir) / "expander.bin",
                    EncodeExpander(result.expander));
    WriteBinaryFile(fs::path(o.out_dir) / "state.bin",
                    EncodeAnalyticState(result.state));
  }
  PrintSummary(report, out);
  out << "wrote " << (fs::path(o.out_dir) / "report.json").string() << ", "
      << (fs::path(o.out_dir) / "matrix.csv").string() << ", "
      << (fs::path(o.out_dir) / "heatmap.svg").string() << "\n";
  return kOk;
}

double ParseSweepValue(const std::string& axis, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ConfigError("--values", "bad " + axis + " value '" + text + "'");
  }
  if (axis == "feg_dim" && v != std::floor(v)) {
    throw ConfigError("--values", "feg_dim values must be integers");
  }
  return v;
}

void ApplySweepValue(ExperimentConfig& config, const std::string& axis,
                     double value) {
  if (axis == "feg_dim") {
    config.expanded_dim = static_cast<int>(value);
  } else {
    config.gamma = value;
  }
}

int CmdSweep(const Options& o, std::ostream& out) {
  const ExperimentConfig base = ResolveConfig(o);
  if (o.values.empty()) throw ConfigError("--values", "no values given");
  std::vector<double> values;
  for (const std::string& text : o.values) {
    const double v = ParseSweepValue(o.axis, text);
    ExperimentConfig probe = base;
    ApplySweepValue(probe, o.axis, v);
    ValidateExperimentConfig(probe);
    values.push_back(v);
  }

  std::vector<SweepPoint> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig config = base;
    ApplySweepValue(config, o.axis, values[i]);
    const ExperimentResult result = RunExperiment(config);
    const RunReport report =
        MakeRunReport(result.matrix, result.timings, DescribeConfig(config));
    EmitReport(report,
               fs::path(o.out_dir) / ("point_" + std::to_string(i)));
    points.push_back({values[i], report.average_performance,
                      report.average_forgetting,
                      report.timings.TrainingTotal()});
    out << o.axis << "=" << FormatReal(values[i]) << "  ";
    PrintSummary(report, out);
  }
  WriteTextFile(fs::path(o.out_dir) / "sweep.csv",
                RenderSweepCsv(o.axis, points));
  WriteTextFile(fs::path(o.out_dir) / "sweep.svg",
                RenderSweepSvg(o.axis, points, o.axis == "gamma"));
  out << "wrote " << (fs::path(o.out_dir) / "sweep.csv").string() << "\n";
  return kOk;
}

void PrintGraphStats(const Graph& g, std::ostream& out) {
  out << "nodes " << g.num_nodes() << "\n"
      << "edges " << g.num_edges() << "\n"
      << "classes " << g.num_classes() << "\n"
      << "features " << g.feature_dim() << "\n"
      << "split train " << g.NodesIn(Split::kTrain).size() << " val "
      << g.NodesIn(Split::kVal).size() << " test "
      << g.NodesIn(Split::kTest).size() << "\n";
  std::vector<int> counts(g.num_classes(), 0);
  for (int label : g.labels()) ++counts[label];
  out << "class sizes";
  for (int c : counts) out << " " << c;
  out << "\n";
}

int CmdGenSynth(const Options& o, std::ostream& out) {
  try {
    ValidateSyntheticSpec(o.synth);
  } catch (const ValidationError& e) {
    throw ConfigError("gen-synth", e.what());
  }
  const Graph g = GenerateSynthetic(o.synth);
  SaveDataset(g, o.out_dir);
  PrintGraphStats(g, out);
  out << "intra-class edge fraction " << IntraClassEdgeFraction(g) << "\n";
  out << "wrote " << o.out_dir << "\n";
  return kOk;
}

int CmdValidate(const Options& o, std::ostream& out) {
  const Graph g = LoadDataset(o.data_dir);
  PrintGraphStats(g, out);
  out << "ok\n";
  return kOk;
}

const CLI::App* FindSubcommand(const CLI::App& app, const std::string& name) {
  if (name.empty()) return &app;
  for (const CLI::App* sub : app.get_subcommands({})) {
    if (sub->get_name() == name) return sub;
  }
  return nullptr;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  auto app = BuildApp(o);
  std::vector<std::string> storage;
  storage.push_back("acgl");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app->parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app->exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (app->got_subcommand("run")) return CmdRun(o, out);
    if (app->got_subcommand("sweep")) return CmdSweep(o, out);
    if (app->got_subcommand("gen-synth")) return CmdGenSynth(o, out);
    if (app->got_subcommand("validate-dataset")) return CmdValidate(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  err << "no command given\n";
  return kConfigError;
}

std::string HelpText(const std::string& subcommand) {
  Options o;
  auto app = BuildApp(o);
  const CLI::App* sub = FindSubcommand(*app, subcommand);
  if (sub == nullptr) return {};
  return sub->help();
}

std::vector<std::string> RegisteredFlags(const std::string& subcommand) {
  Options o;
  auto app = BuildApp(o);
  std::vector<std::string> flags;
  const CLI::App* sub = FindSubcommand(*app, subcommand);
  if (sub == nullptr) return flags;
  for (const CLI::Option* opt : sub->get_options({})) {
    for (const std::string& name : opt->get_lnames()) flags.push_back("--" + name);
  }
  return flags;
}

std::vector<std::string> Subcommands() {
  Options o;
  auto app = BuildApp(o);
  std::vector<std::string> names;
  for (const CLI::App* sub : app->get_subcommands({})) {
    names.push_back(sub->get_name());
  }
  return names;
}

std::vector<std::string> UndocumentedFlags() {
  Options o;
  auto app = BuildApp(o);
  std::vector<std::string> missing;
  for (const CLI::App* sub : app->get_subcommands({})) {
    for (const CLI::Option* opt : sub->get_options({})) {
      if (opt->get_description().empty()) {
        missing.push_back(sub->get_name() + " " + opt->get_name());
      }
    }
  }
  return missing;
}

}  // namespace acgl::cli
