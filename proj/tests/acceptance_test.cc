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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits non-zero
// when any criterion fails.
//
// AC1 needs the real flow corpus: set ELMDDOS_CICIOMT_CSV to a labelled CSV
// export; ELMDDOS_CICIOMT_ARGS may add schema flags (whitespace separated),
// e.g. "--label-column label --exclude ts,src_ip".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "elmddos/cli.h"
#include "elmddos/csv.h"
#include "elmddos/elm.h"
#include "elmddos/linalg.h"
#include "elmddos/metrics.h"
#include "elmddos/model_io.h"
#include "elmddos/pipeline.h"
#include "elmddos/preprocess.h"
#include "elmddos/synthetic.h"
#include "test_support.h"

namespace elmddos {
namespace {

using testing::naive_matmul;
using testing::naive_transpose;
using testing::read_file;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int run_cli(const std::vector<std::string>& args, const std::string& input = "",
            std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

EvalReport read_report(const std::string& path) {
  std::ifstream in(path);
  return parse_report(in);
}

Outcome fail(std::string why) { return {Status::kFail, std::move(why)}; }

Outcome ac1_real_corpus() {
  const char* csv = std::getenv("ELMDDOS_CICIOMT_CSV");
  if (csv == nullptr || *csv == '\0') {
    return {Status::kSkip, "set ELMDDOS_CICIOMT_CSV to a labelled corpus export to run"};
  }
  testing::TempDir dir("ac1");
  std::vector<std::string> args{"grid", "--input", csv, "--model", dir.file("m.txt"),
                                "--report", dir.file("r.txt")};
  if (const char* extra = std::getenv("ELMDDOS_CICIOMT_ARGS")) {
    std::istringstream ss(extra);
    for (std::string a; ss >> a;) args.push_back(a);
  }
  std::string err;
  if (const int code = run_cli(args, "", nullptr, &err); code != 0) {
    return fail("grid exited " + std::to_string(code) + ": " + err);
  }
  const EvalReport r = read_report(dir.file("r.txt"));
  const bool ok = std::fabs(r.accuracy * 100.0 - 94.87) <= 2.0 &&
                  std::fabs(r.precision - 0.95) <= 0.03 && std::fabs(r.recall - 0.95) <= 0.03 &&
                  std::fabs(r.f1 - 0.95) <= 0.03;
  Outcome o{ok ? Status::kPass : Status::kFail,
            "accuracy=" + fmt("%.2f%%", r.accuracy * 100) + " precision=" +
                fmt("%.4f", r.precision) + " recall=" + fmt("%.4f", r.recall) +
                " f1=" + fmt("%.4f", r.f1) + " (target 94.87% +-2, 0.95 +-0.03)"};
  return o;
}

Outcome ac2_desk_scale() {
  testing::TempDir dir("ac2");
  if (run_cli({"synth", "--output", dir.file("flows.csv"), "--benign", "2000", "--attack",
               "2000", "--seed", "7"}) != 0) {
    return fail("synth failed");
  }
  std::string err;
  if (run_cli({"train", "--input", dir.file("flows.csv"), "--model", dir.file("m.txt"),
               "--report", dir.file("r.txt"), "--hidden", "64", "--activation", "tanh"},
              "", nullptr, &err) != 0) {
    return fail("train failed: " + err);
  }
  const EvalReport r = read_report(dir.file("r.txt"));
  const bool ok = r.accuracy >= 0.95 && r.auc_roc >= 0.97;
  return {ok ? Status::kPass : Status::kFail,
          "accuracy=" + fmt("%.4f", r.accuracy) + " (>= 0.95) auc=" + fmt("%.5f", r.auc_roc) +
              " (>= 0.97)"};
}

double rel_frobenius(const Matrix& got, const Matrix& want) {
  const double num = frobenius_norm(got - want);
  const double den = frobenius_norm(want);
  if (num == 0.0) return 0.0;
  return den == 0.0 ? num : num / den;
}

Outcome ac3_numerics() {
  Rng rng(2024);
  double worst = 0.0;
  int rank_deficient = 0, zero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.below(50), n = 1 + rng.below(50);
    Matrix a;
    if (trial % 10 == 0) {
      a = Matrix::zeros(m, n);
      ++zero;
    } else if (trial % 3 == 0) {
      a = testing::random_low_rank(rng, m, n, 1 + rng.below(std::min(m, n)));
      ++rank_deficient;
    } else {
      a = testing::random_matrix(rng, m, n, -5.0, 5.0);
    }
    const Matrix p = pseudoinverse(a);
    const Matrix ap = naive_matmul(a, p), pa = naive_matmul(p, a);
    worst = std::max({worst, rel_frobenius(naive_matmul(ap, a), a),
                      rel_frobenius(naive_matmul(pa, p), p),
                      rel_frobenius(naive_transpose(ap), ap),
                      rel_frobenius(naive_transpose(pa), pa)});
  }
  double worst_ls = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(15);
    const std::size_t m = n + rng.below(35);
    const Matrix a = testing::random_matrix(rng, m, n);
    const Matrix t = testing::random_matrix(rng, m, 1);
    const Matrix want = naive_matmul(testing::normal_equations_pinv(a), t);
    worst_ls = std::max(worst_ls, rel_frobenius(lstsq(a, t), want));
  }
  const bool ok = worst <= 1e-8 && worst_ls <= 1e-8;
  return {ok ? Status::kPass : Status::kFail,
          "worst Penrose rel. error=" + fmt("%.2e", worst) + " over 100 matrices (" +
              std::to_string(rank_deficient) + " rank-deficient, " + std::to_string(zero) +
              " zero); lstsq vs normal equations=" + fmt("%.2e", worst_ls) + " (<= 1e-8)"};
}

Outcome ac4_interpolation() {
  std::string detail;
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    Rng rng(500 + attempt);
    const Matrix x = testing::random_matrix(rng, 50, 8);
    Labels y(50);
    for (auto& v : y) v = static_cast<Label>(rng.below(2));
    ElmParams p;
    p.hidden_nodes = 50;
    p.activation = Activation::kTanh;
    p.seed = 900 + attempt;
    const ElmModel m = fit(x, y, p);
    const std::vector<double> s = score(m, x);
    double mse = 0.0;
    for (std::size_t i = 0; i < 50; ++i) mse += (s[i] - y[i]) * (s[i] - y[i]);
    mse /= 50.0;
    detail += (attempt ? "; retry mse=" : "mse=") + fmt("%.3e", mse);
    if (mse < 1e-6) return {Status::kPass, detail + " (< 1e-6, L = N = 50)"};
  }
  return fail(detail + " (two consecutive draws failed)");
}

Outcome ac5_metric_oracles() {
  Rng rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    Labels t(n), p(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<Label>(rng.below(2));
      p[i] = static_cast<Label>(rng.below(2));
      s[i] = trial % 2 ? rng.uniform01() : static_cast<double>(rng.below(4));
    }
    t[0] = 0;
    t[1] = 1;
    if (trial == 0) std::fill(s.begin(), s.end(), 0.25);
    if (trial == 1) {
      for (std::size_t i = 0; i < n; ++i) s[i] = t[i];
    }
    ConfusionMatrix want;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i] && p[i]) ++want.tp;
      if (!t[i] && p[i]) ++want.fp;
      if (!t[i] && !p[i]) ++want.tn;
      if (t[i] && !p[i]) ++want.fn;
    }
    if (!(confusion(t, p) == want)) return fail("confusion mismatch on instance " + std::to_string(trial));
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (t[i] == 1 && t[j] == 0) {
          pairs += 1;
          wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
        }
    const double auc = auc_roc(t, s);
    worst = std::max(worst, std::fabs(auc - wins / pairs));
    if (trial == 0 && auc != 0.5) return fail("all-ties AUC " + fmt("%.17g", auc));
    if (trial == 1 && auc != 1.0) return fail("perfect-separation AUC " + fmt("%.17g", auc));
  }
  return {worst <= 1e-12 ? Status::kPass : Status::kFail,
          "100 instances; confusion exact; worst AUC deviation=" + fmt("%.2e", worst) +
              " (<= 1e-12); all-ties 0.5, perfect 1.0"};
}

Outcome ac6_preprocessing() {
  const Matrix x =
      Matrix::from_rows({{1, 4, 2}, {2, 3, 2}, {3, 5, 7}, {4, 1, 2}, {5, 6, 7}, {6, 2, 7}});
  const FlowDataset d(x, {0, 0, 1, 0, 1, 1}, {"a", "b", "c"});
  const FeatureSelection sel = select_features(d, 0.02);
  // r = sxy / sqrt(sxx * syy) with exact sums 7/2, 5/2, 15/2 over 35/2, 35/2, 75/2 and 3/2.
  const double want[3] = {3.5 / std::sqrt(17.5 * 1.5), 2.5 / std::sqrt(17.5 * 1.5),
                          7.5 / std::sqrt(37.5 * 1.5)};
  double worst_r = 0.0;
  for (int c = 0; c < 3; ++c) worst_r = std::max(worst_r, std::fabs(sel.correlations[c] - want[c]));

  Rng rng(88);
  const Matrix train = testing::random_matrix(rng, 200, 6, -30, 70);
  const Matrix z = apply_scaler(fit_scaler(train), train);
  double worst_mean = 0.0, worst_std = 0.0;
  for (std::size_t c = 0; c < z.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) mean += z(i, c);
    mean /= static_cast<double>(z.rows());
    double var = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) var += (z(i, c) - mean) * (z(i, c) - mean);
    worst_mean = std::max(worst_mean, std::fabs(mean));
    worst_std = std::max(worst_std, std::fabs(std::sqrt(var / static_cast<double>(z.rows())) - 1.0));
  }

  Labels y(101);
  for (auto& v : y) v = rng.uniform01() < 0.35 ? 1 : 0;
  const SplitIndices s = split_indices(y, 0.8, 5);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  bool partition = all.size() == y.size();
  for (std::size_t i = 0; partition && i < all.size(); ++i) partition = all[i] == i;
  bool stratified = true;
  for (Label cls : {Label{0}, Label{1}}) {
    const auto count = static_cast<std::size_t>(std::count(y.begin(), y.end(), cls));
    const auto in_train = static_cast<std::size_t>(
        std::count_if(s.train.begin(), s.train.end(), [&](std::size_t i) { return y[i] == cls; }));
    stratified = stratified && in_train == static_cast<std::size_t>(std::floor(count * 0.8 + 0.5));
  }
  const bool ok = worst_r <= 1e-12 && worst_mean < 1e-12 && worst_std < 1e-12 && partition &&
                  stratified;
  return {ok ? Status::kPass : Status::kFail,
          "pearson dev=" + fmt("%.1e", worst_r) + " |mean|=" + fmt("%.1e", worst_mean) +
              " |std-1|=" + fmt("%.1e", worst_std) + " partition=" + (partition ? "yes" : "no") +
              " stratified=" + (stratified ? "yes" : "no")};
}

Outcome ac7_determinism() {
  testing::TempDir dir("ac7");
  const std::string csv = dir.file("flows.csv");
  if (run_cli({"synth", "--output", csv, "--benign", "500", "--attack", "500"}) != 0) {
    return fail("synth failed");
  }
  for (const char* tag : {"1", "2"}) {
    const std::string t = tag;
    if (run_cli({"train", "--input", csv, "--model", dir.file("m" + t), "--report",
                 dir.file("r" + t), "--seed", "13", "--hidden", "48"}) != 0) {
      return fail("train failed");
    }
  }
  for (const char* threads : {"1", "4"}) {
    const std::string t = threads;
    if (run_cli({"grid", "--input", csv, "--model", dir.file("g" + t), "--hidden", "8,16,32",
                 "--activation", "tanh,sigmoid,rbf", "--folds", "3", "--threads", t,
                 "--leaderboard", dir.file("lb" + t)}) != 0) {
      return fail("grid failed");
    }
  }
  const bool models = read_file(dir.file("m1")) == read_file(dir.file("m2"));
  const bool reports = read_file(dir.file("r1")) == read_file(dir.file("r2"));
  const bool board = read_file(dir.file("lb1")) == read_file(dir.file("lb4"));
  const bool ok = models && reports && board && !read_file(dir.file("m1")).empty();
  return {ok ? Status::kPass : Status::kFail,
          std::string("model bytes ") + (models ? "identical" : "DIFFER") + ", report bytes " +
              (reports ? "identical" : "DIFFER") + ", leaderboard serial vs 4 threads " +
              (board ? "identical" : "DIFFER")};
}

Outcome ac8_batch_stream() {
  testing::TempDir dir("ac8");
  const std::string csv = dir.file("flows.csv");
  if (run_cli({"synth", "--output", csv, "--benign", "400", "--attack", "400", "--seed", "3"}) !=
          0 ||
      run_cli({"train", "--input", csv, "--model", dir.file("m"), "--hidden", "40"}) != 0 ||
      run_cli({"evaluate", "--input", csv, "--model", dir.file("m"), "--predictions",
               dir.file("pred")}) != 0) {
    return fail("setup failed");
  }
  std::string streamed;
  if (run_cli({"score", "--model", dir.file("m")}, read_file(csv), &streamed) != 0) {
    return fail("score failed");
  }
  const std::string batch = read_file(dir.file("pred"));
  const auto n = static_cast<std::size_t>(std::count(batch.begin(), batch.end(), '\n'));
  return {streamed == batch && n == 800 ? Status::kPass : Status::kFail,
          std::to_string(n) + " records; stream " +
              (streamed == batch ? "identical to" : "DIFFERS from") + " evaluate predictions"};
}

Outcome ac9_serialization() {
  SyntheticSpec spec;
  spec.n_benign = 500;
  spec.n_attack = 500;
  const FlowDataset data = generate_synthetic(spec);
  PipelineConfig cfg;
  FeatureLayout layout;
  layout.raw_columns = data.feature_names();
  ElmParams p;
  p.hidden_nodes = 64;
  const TrainedPipeline t = train_pipeline(prepare_split(data, cfg), p, cfg, {}, layout, 0.5);
  testing::TempDir dir("ac9");
  save_model(t.artifact, dir.file("m"));
  const ModelArtifact back = load_model(dir.file("m"));
  Rng rng(99);
  const Matrix probe = testing::random_matrix(rng, 1000, data.cols(), 0.0, 100.0);
  const auto a = score_expanded(t.artifact, probe);
  const auto b = score_expanded(back, probe);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  const bool bitwise = std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
  return {worst == 0.0 && bitwise && a.size() == 1000 ? Status::kPass : Status::kFail,
          "max |score difference| over 1000 probes=" + fmt("%.17g", worst)};
}

}  // namespace
}  // namespace elmddos

int main() {
  using namespace elmddos;
  const std::vector<Criterion> criteria{
      {"AC1", "corpus-scale grid result", 0, ac1_real_corpus},
      {"AC2", "desk-scale synthetic train", 60, ac2_desk_scale},
      {"AC3", "numerics suite", 10, ac3_numerics},
      {"AC4", "interpolation property", 5, ac4_interpolation},
      {"AC5", "metric oracles", 5, ac5_metric_oracles},
      {"AC6", "preprocessing oracles", 5, ac6_preprocessing},
      {"AC7", "determinism", 0, ac7_determinism},
      {"AC8", "batch/stream equivalence", 0, ac8_batch_stream},
      {"AC9", "serialization round trip", 0, ac9_serialization},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.time_limit_s > 0) {
      timing += fmt(", limit %.0f s", c.time_limit_s);
      if (o.status == Status::kPass && secs >= c.time_limit_s) {
        o.status = Status::kFail;
        o.detail += " [over time limit]";
      }
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIP";
    if (o.status == Status::kFail) ++failures;
    std::printf("[%s] %s %s: %s (%s)\n", tag, c.id, c.title, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
