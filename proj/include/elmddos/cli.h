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

#ifndef ELMDDOS_CLI_H_
#define ELMDDOS_CLI_H_

// Command-line front end: train, grid, evaluate, score, synth.
//
// Exit codes: 0 success, 1 usage, 2 data or schema problem, 3 numeric
// failure. Every file the commands write goes through a temporary file and
// a rename, so a failed run leaves no partial output behind.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elmddos/csv.h"
#include "elmddos/errors.h"
#include "elmddos/metrics.h"
#include "elmddos/model_select.h"
#include "elmddos/pipeline.h"
#include "elmddos/synthetic.h"

namespace elmddos::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string model_path;
  std::string report_path;
  std::string predictions_path;
  std::string leaderboard_path;
  std::string output;

  CsvSchema schema;
  bool schema_overridden = false;  // evaluate: prefer flags over the artifact
  PipelineConfig pipeline;
  ElmParams params;
  GridSpec grid;
  unsigned threads = 1;
  double threshold = kDefaultThreshold;

  SyntheticSpec synth;
};

// Tracks which stage a command is in so failures can be reported by name.
struct CommandContext {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string stage = "setup";
};

TrainedPipeline cmd_train(const RunConfig& config, CommandContext& ctx);

struct GridOutcome {
  GridResult grid;
  TrainedPipeline final_model;
};
GridOutcome cmd_grid(const RunConfig& config, CommandContext& ctx);

EvalReport cmd_evaluate(const RunConfig& config, CommandContext& ctx);

struct ScoreSummary {
  std::uint64_t verdicts = 0;
  std::uint64_t malformed = 0;
};
// Reads records from config.input ("-" = ctx.in) and writes one
// "ordinal,score,label" line per record, flushed as it is produced.
// Malformed records yield "ordinal,error,<reason>" and processing continues.
ScoreSummary cmd_score(const RunConfig& config, CommandContext& ctx);

FlowDataset cmd_synth(const RunConfig& config, CommandContext& ctx);

// Leaderboard as CSV: rank,hidden_nodes,activation,rbf_gamma,mean,stddev,
// fold_metrics(';'-joined),status.
std::string leaderboard_csv(const GridResult& result, SelectionMetric metric);

// Parses `args` (without the program name), runs the command and maps
// failures onto exit codes. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace elmddos::cli

#endif  // ELMDDOS_CLI_H_
