/*
 * Copyright 2026 The elmddos Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "elmddos/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "elmddos/linalg.h"
#include "elmddos/text.h"

namespace elmddos::cli {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

struct LoadedData {
  FlowDataset cleaned;
  FeatureLayout layout;
};

LoadedData load_and_clean(const RunConfig& config, CommandContext& ctx) {
  if (config.input.empty()) throw UsageError("--input is required");
  ctx.stage = "load";
  LoadedCsv csv = load_csv(config.input, config.schema);
  ctx.stage = "clean";
  CleanStats stats;
  FlowDataset cleaned = clean(csv.table, &stats);
  ctx.err << "loaded " << csv.table.rows << " rows x " << csv.table.cols << " features from "
          << config.input << "; dropped " << stats.dropped_missing << " with missing values, "
          << stats.dropped_duplicates << " duplicates\n";
  return {std::move(cleaned), std::move(csv.layout)};
}

void write_report_file(const std::string& path, const EvalReport& report) {
  if (path.empty()) return;
  std::ostringstream text;
  write_report(text, report);
  write_file_atomically(path, text.str());
}

void print_selection(std::ostream& out, const PreparedSplit& prepared,
                     const std::vector<std::string>& all_names) {
  out << "Selected " << prepared.selection.kept_indices.size() << " of " << all_names.size()
      << " features (|r| >= " << format_double(prepared.selection.threshold) << ")\n";
  out << "Split: " << prepared.train.rows() << " train / " << prepared.test.rows() << " test\n";
}

std::string verdict_line(std::uint64_t ordinal, double score_value, Label label) {
  return std::to_string(ordinal) + "," + format_double(score_value) + "," +
         std::to_string(static_cast<int>(label));
}

void check_common(const RunConfig& config) {
  if (!(config.pipeline.train_fraction > 0.0 && config.pipeline.train_fraction < 1.0)) {
    throw UsageError("--train-fraction must lie in (0, 1)");
  }
  if (!(config.pipeline.corr_threshold >= 0.0)) {
    throw UsageError("--corr-threshold must be >= 0");
  }
  if (!std::isfinite(config.threshold)) throw UsageError("--threshold must be finite");
}

}  // namespace

TrainedPipeline cmd_train(const RunConfig& config, CommandContext& ctx) {
  check_common(config);
  if (config.model_path.empty()) throw UsageError("--model is required");
  try {
    config.params.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  LoadedData data = load_and_clean(config, ctx);

  ctx.stage = "split";
  PreparedSplit prepared = prepare_split(data.cleaned, config.pipeline);
  print_selection(ctx.out, prepared, data.cleaned.feature_names());

  ctx.stage = "fit";
  TrainedPipeline trained = train_pipeline(prepared, config.params, config.pipeline,
                                           config.schema, data.layout, config.threshold);

  ctx.stage = "write";
  save_model(trained.artifact, config.model_path);
  write_report_file(config.report_path, trained.report);

  ctx.out << "ELM hidden=" << config.params.hidden_nodes
          << " activation=" << activation_name(config.params.activation) << '\n';
  print_summary(ctx.out, trained.report);
  ctx.out << "Model written to " << config.model_path << '\n';
  return trained;
}

std::string leaderboard_csv(const GridResult& result, SelectionMetric metric) {
  std::ostringstream out;
  out << "rank,hidden_nodes,activation,rbf_gamma,mean_" << metric_name(metric) << ",std_"
      << metric_name(metric) << ",fold_metrics,status\n";
  std::size_t rank = 1;
  for (const auto& e : result.leaderboard) {
    std::string folds;
    for (double m : e.fold_metrics) {
      if (!folds.empty()) folds += ';';
      folds += format_double(m);
    }
    std::string status = e.failed ? "failed: " + e.error : "ok";
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ' ';
    }
    out << rank++ << ',' << e.params.hidden_nodes << ',' << activation_name(e.params.activation)
        << ',' << format_double(e.params.rbf_gamma) << ','
        << (e.failed ? std::string("-inf") : format_double(e.mean)) << ','
        << format_double(e.stddev) << ',' << folds << ',' << status << '\n';
  }
  return out.str();
}

GridOutcome cmd_grid(const RunConfig& config, CommandContext& ctx) {
  check_common(config);
  if (config.model_path.empty()) throw UsageError("--model is required");
  try {
    config.grid.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  LoadedData data = load_and_clean(config, ctx);

  ctx.stage = "split";
  PreparedSplit prepared = prepare_split(data.cleaned, config.pipeline);
  print_selection(ctx.out, prepared, data.cleaned.feature_names());

  ctx.stage = "grid";
  CvOptions cv;
  cv.leak_free = config.pipeline.leak_free;
  cv.corr_threshold = config.pipeline.corr_threshold;
  cv.decision_threshold = config.threshold;
  // Leak-free CV re-selects features inside every fold from all columns.
  const FlowDataset cv_data = config.pipeline.leak_free
                                  ? data.cleaned.subset(prepared.indices.train)
                                  : prepared.train;
  GridResult grid = grid_search(cv_data, config.grid, cv, config.threads);

  ctx.out << "Grid search: " << grid.leaderboard.size() << " configurations, "
          << config.grid.folds << "-fold CV, metric " << metric_name(config.grid.metric) << '\n';
  std::size_t rank = 1;
  for (const auto& e : grid.leaderboard) {
    ctx.out << "  " << rank++ << ". hidden=" << e.params.hidden_nodes
            << " activation=" << activation_name(e.params.activation);
    if (e.params.activation == Activation::kRbf) {
      ctx.out << " gamma=" << format_double(e.params.rbf_gamma);
    }
    if (e.failed) {
      ctx.out << "  failed: " << e.error << '\n';
    } else {
      ctx.out << "  " << metric_name(config.grid.metric) << " = " << fixed(e.mean, 4) << " +- "
              << fixed(e.stddev, 4) << '\n';
    }
  }

  if (grid.leaderboard.front().failed) {
    throw ValidationError("every grid configuration failed; first error: " +
                          grid.leaderboard.front().error);
  }

  ctx.stage = "fit";
  ElmParams best = grid.best;
  best.seed = config.params.seed;
  TrainedPipeline final_model = train_pipeline(prepared, best, config.pipeline, config.schema,
                                               data.layout, config.threshold);

  ctx.stage = "write";
  save_model(final_model.artifact, config.model_path);
  write_report_file(config.report_path, final_model.report);
  if (!config.leaderboard_path.empty()) {
    write_file_atomically(config.leaderboard_path, leaderboard_csv(grid, config.grid.metric));
  }

  ctx.out << "Best: hidden=" << best.hidden_nodes << " activation=" << activation_name(best.activation);
  if (best.activation == Activation::kRbf) ctx.out << " gamma=" << format_double(best.rbf_gamma);
  ctx.out << '\n';
  print_summary(ctx.out, final_model.report);
  ctx.out << "Model written to " << config.model_path << '\n';
  return {std::move(grid), std::move(final_model)};
}

EvalReport cmd_evaluate(const RunConfig& config, CommandContext& ctx) {
  if (config.model_path.empty()) throw UsageError("--model is required");
  if (config.input.empty()) throw UsageError("--input is required");
  if (!std::isfinite(config.threshold)) throw UsageError("--threshold must be finite");

  ctx.stage = "load model";
  const ModelArtifact artifact = load_model(config.model_path);
  CsvSchema schema = artifact.schema;
  if (config.schema_overridden) {
    schema.label_column = config.schema.label_column;
    schema.benign_value = config.schema.benign_value;
    schema.delimiter = config.schema.delimiter;
  }

  ctx.stage = "load";
  LoadedCsv csv = [&] {
    try {
      return load_csv(config.input, schema, &artifact.layout);
    } catch (const DataError& e) {
      const std::string what = e.what();
      if (what.find("label column") != std::string::npos) {
        throw DataError(what + " (evaluate needs labelled data; use 'score' for unlabelled records)");
      }
      throw;
    }
  }();

  // Rows with missing values cannot be scored; keep the original ordinals.
  const RawFlowTable& t = csv.table;
  std::vector<std::size_t> ordinals;
  std::vector<double> cells;
  Labels labels;
  for (std::size_t r = 0; r < t.rows; ++r) {
    bool ok = true;
    for (std::size_t c = 0; c < t.cols; ++c) ok = ok && std::isfinite(t.cell(r, c));
    if (!ok) continue;
    ordinals.push_back(r);
    cells.insert(cells.end(), t.cells.begin() + static_cast<std::ptrdiff_t>(r * t.cols),
                 t.cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * t.cols));
    labels.push_back(t.labels[r]);
  }
  if (ordinals.empty()) throw ValidationError("no complete rows to evaluate");
  if (ordinals.size() != t.rows) {
    ctx.err << "evaluate: skipped " << (t.rows - ordinals.size()) << " rows with missing values\n";
  }
  const Matrix expanded(ordinals.size(), t.cols, std::move(cells));

  ctx.stage = "score";
  const std::vector<double> scores = score_expanded(artifact, expanded);
  const EvalReport report = make_report(labels, scores, config.threshold);

  ctx.stage = "write";
  write_report_file(config.report_path, report);
  if (!config.predictions_path.empty()) {
    const Labels predicted = threshold_scores(scores, config.threshold);
    std::string text;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      text += verdict_line(ordinals[i], scores[i], predicted[i]) + '\n';
    }
    write_file_atomically(config.predictions_path, text);
  }
  print_summary(ctx.out, report);
  return report;
}

ScoreSummary cmd_score(const RunConfig& config, CommandContext& ctx) {
  if (config.model_path.empty()) throw UsageError("--model is required");
  if (!std::isfinite(config.threshold)) throw UsageError("--threshold must be finite");

  ctx.stage = "load model";
  const ModelArtifact artifact = load_model(config.model_path);
  const FeatureLayout& layout = artifact.layout;
  const char delim = artifact.schema.delimiter;

  std::ifstream file;
  std::istream* in = &ctx.in;
  if (!config.input.empty() && config.input != "-") {
    file.open(config.input);
    if (!file) throw DataError("cannot open input file '" + config.input + "'");
    in = &file;
  }

  ctx.stage = "score";
  ScoreSummary summary;
  std::vector<std::size_t> positions;  // raw column -> field index
  std::size_t expected_fields = layout.raw_columns.size();
  for (std::size_t c = 0; c < layout.raw_columns.size(); ++c) positions.push_back(c);

  bool first = true;
  std::uint64_t ordinal = 0;
  std::string line;
  std::vector<std::string_view> cells(layout.raw_columns.size());
  std::vector<double> row(layout.n_features());
  while (std::getline(*in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_record(line, delim);

    if (first) {
      first = false;
      // A first line naming every raw column is a header.
      std::vector<std::size_t> header_pos;
      for (const auto& col : layout.raw_columns) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (trim(fields[i]) == col) {
            header_pos.push_back(i);
            break;
          }
        }
      }
      if (header_pos.size() == layout.raw_columns.size()) {
        positions = std::move(header_pos);
        expected_fields = fields.size();
        continue;
      }
    }

    std::string problem;
    if (fields.size() != expected_fields) {
      problem = "expected " + std::to_string(expected_fields) + " fields, got " +
                std::to_string(fields.size());
    } else {
      for (std::size_t c = 0; c < positions.size(); ++c) cells[c] = fields[positions[c]];
      layout.expand(cells, row);
      for (std::size_t f = 0; f < row.size() && problem.empty(); ++f) {
        if (!std::isfinite(row[f])) problem = "missing or non-numeric value for feature " +
                                              layout.feature_names()[f];
      }
    }

    if (problem.empty()) {
      const Matrix x(1, row.size(), row);
      const double s = score_expanded(artifact, x).front();
      ctx.out << verdict_line(ordinal, s, s >= config.threshold ? 1 : 0) << '\n';
      ++summary.verdicts;
    } else {
      ctx.out << ordinal << ",error," << problem << '\n';
      ++summary.malformed;
    }
    ctx.out.flush();
    ++ordinal;
  }
  if (summary.malformed > 0) {
    ctx.err << "score: warning: " << summary.malformed << " malformed record(s) skipped\n";
  }
  return summary;
}

FlowDataset cmd_synth(const RunConfig& config, CommandContext& ctx) {
  if (config.output.empty()) throw UsageError("--output is required");
  ctx.stage = "generate";
  FlowDataset data = [&] {
    try {
      return generate_synthetic(config.synth);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
  }();
  ctx.stage = "write";
  std::ostringstream text;
  write_csv(text, data, config.schema);
  write_file_atomically(config.output, text.str());
  ctx.out << "Wrote " << data.rows() << " rows (" << data.count(0) << " benign, " << data.count(1)
          << " attack) x " << data.cols() << " features to " << config.output << '\n';
  return data;
}

namespace {

std::array<double, kAttackCategoryCount> parse_mix(const std::string& text) {
  std::array<double, kAttackCategoryCount> mix{};
  for (auto item : split_view(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw UsageError("--mix expects category=weight pairs");
    const auto cat = parse_category(trim(item.substr(0, eq)));
    const auto w = parse_double(item.substr(eq + 1));
    if (!cat) throw UsageError("--mix: unknown category '" + std::string(item.substr(0, eq)) + "'");
    if (!w) throw UsageError("--mix: bad weight in '" + std::string(item) + "'");
    mix[static_cast<std::size_t>(*cat)] = *w;
  }
  return mix;
}

void add_schema_flags(CLI::App* sub, RunConfig& cfg, std::string& delimiter) {
  sub->add_option("--label-column", cfg.schema.label_column, "Label column name")
      ->capture_default_str();
  sub->add_option("--benign-value", cfg.schema.benign_value,
                  "Label value meaning benign traffic (case-insensitive)")
      ->capture_default_str();
  sub->add_option("--delimiter", delimiter, "Field delimiter (single character or 'tab')")
      ->capture_default_str();
  sub->add_option("--exclude", cfg.schema.exclude_columns, "Columns to ignore")->delimiter(',');
  sub->add_option("--categorical", cfg.schema.categorical_columns,
                  "Columns to one-hot encode")
      ->delimiter(',');
}

void add_pipeline_flags(CLI::App* sub, RunConfig& cfg, std::string& split_mode) {
  sub->add_option("--input", cfg.input, "Labelled flow CSV")->required();
  sub->add_option("--model", cfg.model_path, "Where to write the model artifact")->required();
  sub->add_option("--report", cfg.report_path, "Where to write the evaluation report");
  sub->add_option("--corr-threshold", cfg.pipeline.corr_threshold,
                  "Drop features with |correlation| below this")
      ->capture_default_str();
  sub->add_option("--train-fraction", cfg.pipeline.train_fraction, "Training share of the split")
      ->capture_default_str();
  sub->add_option("--seed", cfg.pipeline.seed, "Seed for split, folds and weights")
      ->capture_default_str();
  sub->add_option("--threshold", cfg.threshold, "Decision threshold on ELM scores")
      ->capture_default_str();
  sub->add_flag("--leak-free", cfg.pipeline.leak_free,
                "Select features on training rows only (per fold in grid)");
  sub->add_option("--split", split_mode, "stratified or random")->capture_default_str();
}

std::vector<Activation> parse_activations(const std::vector<std::string>& names) {
  std::vector<Activation> out;
  for (const auto& n : names) {
    const auto a = parse_activation(n);
    if (!a) throw UsageError("unknown activation '" + n + "' (tanh, sigmoid, rbf)");
    out.push_back(*a);
  }
  return out;
}

char parse_delimiter(const std::string& text) {
  if (text == "tab" || text == "\\t") return '\t';
  if (text.size() != 1) throw UsageError("--delimiter must be a single character");
  return text[0];
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Extreme Learning Machine DDoS/DoS flow classifier"};
  app.set_config("--config", "", "TOML/INI file with default flag values; flags override it");
  app.require_subcommand(1);

  std::string delimiter = ",";
  std::string split_mode = "stratified";
  std::vector<std::size_t> hidden{64};
  std::vector<std::string> activations{"tanh"};
  std::vector<double> gammas{1.0};
  std::size_t folds = 5;
  std::string metric = "f1";
  std::string mix;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());

  auto* train = app.add_subcommand("train", "Fit one ELM and evaluate it on the held-out split");
  add_pipeline_flags(train, cfg, split_mode);
  add_schema_flags(train, cfg, delimiter);
  train->add_option("--hidden", hidden, "Hidden nodes")->capture_default_str();
  train->add_option("--activation", activations, "tanh, sigmoid or rbf")->capture_default_str();
  train->add_option("--rbf-gamma", gammas, "RBF width")->capture_default_str();

  auto* grid = app.add_subcommand("grid", "Cross-validated grid search, then refit the best");
  add_pipeline_flags(grid, cfg, split_mode);
  add_schema_flags(grid, cfg, delimiter);
  grid->add_option("--hidden", hidden, "Hidden node candidates")->delimiter(',');
  grid->add_option("--activation", activations, "Activation candidates")->delimiter(',');
  grid->add_option("--rbf-gamma", gammas, "RBF width candidates")->delimiter(',');
  grid->add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
  grid->add_option("--metric", metric, "f1 or accuracy")->capture_default_str();
  grid->add_option("--threads", threads, "Worker threads for the grid");
  grid->add_option("--leaderboard", cfg.leaderboard_path, "Where to write the leaderboard CSV");

  auto* evaluate = app.add_subcommand("evaluate", "Score a labelled CSV with a saved model");
  evaluate->add_option("--input", cfg.input, "Labelled flow CSV")->required();
  evaluate->add_option("--model", cfg.model_path, "Model artifact")->required();
  evaluate->add_option("--report", cfg.report_path, "Where to write the evaluation report");
  evaluate->add_option("--predictions", cfg.predictions_path,
                       "Where to write ordinal,score,label per row");
  evaluate->add_option("--threshold", cfg.threshold, "Decision threshold")->capture_default_str();
  add_schema_flags(evaluate, cfg, delimiter);

  auto* score_cmd = app.add_subcommand("score", "Stream verdicts for CSV records");
  score_cmd->add_option("--model", cfg.model_path, "Model artifact")->required();
  score_cmd->add_option("--input", cfg.input, "Record file, '-' for stdin")->capture_default_str();
  score_cmd->add_option("--threshold", cfg.threshold, "Decision threshold")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write a synthetic labelled flow CSV");
  synth->add_option("--output", cfg.output, "Destination CSV")->required();
  synth->add_option("--benign", cfg.synth.n_benign, "Benign rows")->capture_default_str();
  synth->add_option("--attack", cfg.synth.n_attack, "Attack rows")->capture_default_str();
  synth->add_option("--seed", cfg.synth.seed, "Generator seed")->capture_default_str();
  synth->add_option("--features", cfg.synth.n_features, "Feature columns")->capture_default_str();
  synth->add_option("--mix", mix, "Attack mix, e.g. ddos=0.5,recon=0.5 (default: uniform)");
  synth->add_option("--label-column", cfg.schema.label_column, "Label column name")
      ->capture_default_str();

  std::vector<const char*> argv{"elmddos"};
  for (const auto& a : args) argv.push_back(a.c_str());

  CLI::App* chosen = nullptr;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();

    cfg.schema.delimiter = parse_delimiter(delimiter);
    auto given = [chosen](const char* flag) {
      return chosen->get_option_no_throw(flag) != nullptr && chosen->count(flag) > 0;
    };
    cfg.schema_overridden =
        given("--label-column") || given("--benign-value") || given("--delimiter");
    if (split_mode == "stratified") {
      cfg.pipeline.split_mode = SplitMode::kStratified;
    } else if (split_mode == "random") {
      cfg.pipeline.split_mode = SplitMode::kRandom;
    } else {
      throw UsageError("--split must be 'stratified' or 'random'");
    }

    const std::vector<Activation> acts = parse_activations(activations);
    if (cfg.command == "train") {
      if (hidden.size() != 1 || acts.size() != 1 || gammas.size() != 1) {
        throw UsageError("train takes a single --hidden, --activation and --rbf-gamma; use grid");
      }
      cfg.params = ElmParams{hidden[0], acts[0], cfg.pipeline.seed, gammas[0]};
    }
    if (cfg.command == "grid") {
      if (folds < 2) throw UsageError("--folds must be at least 2");
      const auto m = parse_metric(metric);
      if (!m) throw UsageError("--metric must be f1 or accuracy");
      cfg.grid.folds = folds;
      cfg.grid.metric = *m;
      cfg.grid.seed = cfg.pipeline.seed;
      if (given("--hidden")) cfg.grid.hidden_nodes = hidden;
      if (given("--activation")) cfg.grid.activations = acts;
      if (given("--rbf-gamma")) cfg.grid.rbf_gammas = gammas;
      cfg.params.seed = cfg.pipeline.seed;
      cfg.threads = std::max(1U, threads);
    }
    if (cfg.command == "synth" && !mix.empty()) cfg.synth.attack_mix = parse_mix(mix);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "elmddos: usage error: " << e.what() << '\n';
    return kUsage;
  }

  CommandContext ctx{in, out, err};
  try {
    if (cfg.command == "train") {
      cmd_train(cfg, ctx);
    } else if (cfg.command == "grid") {
      cmd_grid(cfg, ctx);
    } else if (cfg.command == "evaluate") {
      cmd_evaluate(cfg, ctx);
    } else if (cfg.command == "score") {
      cmd_score(cfg, ctx);
    } else if (cfg.command == "synth") {
      cmd_synth(cfg, ctx);
    }
  } catch (const UsageError& e) {
    err << "elmddos " << cfg.command << ": usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "elmddos " << cfg.command << ": " << ctx.stage << " failed (numeric): " << e.what()
        << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "elmddos " << cfg.command << ": " << ctx.stage << " failed: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "elmddos " << cfg.command << ": " << ctx.stage << " failed (internal): " << e.what()
        << '\n';
    return kNumeric;
  }
  return kOk;
}

}  // namespace elmddos::cli
