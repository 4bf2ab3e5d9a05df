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

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "elmddos/errors.h"
#include "elmddos/metrics.h"
#include "elmddos/text.h"

namespace elmddos {
namespace {

constexpr std::string_view kReportHeader = "# elmddos evaluation report v1";

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw IntegrityError("report: bad count for '" + key + "': " + value);
  }
}

}  // namespace

void write_report(std::ostream& out, const EvalReport& r) {
  out << kReportHeader << '\n'
      << "n_samples=" << r.n_samples << '\n'
      << "threshold=" << format_double(r.threshold) << '\n'
      << "accuracy=" << format_double(r.accuracy) << '\n'
      << "precision=" << format_double(r.precision) << '\n'
      << "recall=" << format_double(r.recall) << '\n'
      << "f1=" << format_double(r.f1) << '\n'
      << "auc_roc=" << format_double(r.auc_roc) << '\n'
      << "benign_precision=" << format_double(r.benign_precision) << '\n'
      << "benign_recall=" << format_double(r.benign_recall) << '\n'
      << "zero_division=" << (r.zero_division ? 1 : 0) << '\n'
      << "tp=" << r.confusion.tp << '\n'
      << "fp=" << r.confusion.fp << '\n'
      << "tn=" << r.confusion.tn << '\n'
      << "fn=" << r.confusion.fn << '\n'
      << '\n'
      << "[confusion]\n"
      << "actual\\predicted benign attack\n"
      << "benign " << r.confusion.tn << ' ' << r.confusion.fp << '\n'
      << "attack " << r.confusion.fn << ' ' << r.confusion.tp << '\n';
}

EvalReport parse_report(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw IntegrityError("report: missing header line");
  }
  std::map<std::string, std::string> kv;
  bool saw_block = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "[confusion]") {
      saw_block = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IntegrityError("report: malformed line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IntegrityError("report: missing key '" + key + "'");
    return it->second;
  };
  auto get_double = [&](const std::string& key) {
    const auto v = parse_double(get(key));
    if (!v) throw IntegrityError("report: bad number for '" + key + "'");
    return *v;
  };

  EvalReport r;
  r.n_samples = parse_count("n_samples", get("n_samples"));
  r.threshold = get_double("threshold");
  r.accuracy = get_double("accuracy");
  r.precision = get_double("precision");
  r.recall = get_double("recall");
  r.f1 = get_double("f1");
  r.auc_roc = get_double("auc_roc");
  r.benign_precision = get_double("benign_precision");
  r.benign_recall = get_double("benign_recall");
  r.zero_division = get("zero_division") == "1";
  r.confusion.tp = parse_count("tp", get("tp"));
  r.confusion.fp = parse_count("fp", get("fp"));
  r.confusion.tn = parse_count("tn", get("tn"));
  r.confusion.fn = parse_count("fn", get("fn"));

  if (!saw_block) throw IntegrityError("report: missing [confusion] block");
  std::string header, name;
  std::uint64_t a = 0, b = 0, c = 0, d = 0;
  std::getline(in, header);
  if (!(in >> name >> a >> b) || name != "benign" || !(in >> name >> c >> d) || name != "attack") {
    throw IntegrityError("report: malformed [confusion] block");
  }
  if (a != r.confusion.tn || b != r.confusion.fp || c != r.confusion.fn || d != r.confusion.tp) {
    throw IntegrityError("report: [confusion] block disagrees with tp/fp/tn/fn");
  }
  return r;
}

void print_summary(std::ostream& out, const EvalReport& r) {
  out << "Test results (" << r.n_samples << " samples, threshold " << fixed(r.threshold, 2)
      << ")\n"
      << "  Accuracy (%)      " << fixed(100.0 * r.accuracy, 2) << "%\n"
      << "  Precision         " << fixed(r.precision, 2) << '\n'
      << "  Recall            " << fixed(r.recall, 2) << '\n'
      << "  F1-Score          " << fixed(r.f1, 2) << '\n'
      << "  AUC-ROC           " << fixed(r.auc_roc, 2) << '\n'
      << "  Benign precision  " << fixed(r.benign_precision, 2) << '\n'
      << "  Benign recall     " << fixed(r.benign_recall, 2) << '\n';
  if (r.zero_division) out << "  (some ratios had a zero denominator and were reported as 0)\n";

  char buf[128];
  out << "Confusion matrix (rows: actual, columns: predicted)\n";
  std::snprintf(buf, sizeof buf, "  %-8s %10s %10s\n", "", "benign", "attack");
  out << buf;
  std::snprintf(buf, sizeof buf, "  %-8s %10llu %10llu\n", "benign",
                static_cast<unsigned long long>(r.confusion.tn),
                static_cast<unsigned long long>(r.confusion.fp));
  out << buf;
  std::snprintf(buf, sizeof buf, "  %-8s %10llu %10llu\n", "attack",
                static_cast<unsigned long long>(r.confusion.fn),
                static_cast<unsigned long long>(r.confusion.tp));
  out << buf;
}

}  // namespace elmddos
