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

#include "elmddos/synthetic.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "elmddos/errors.h"
#include "elmddos/random.h"

namespace elmddos {
namespace {

enum Feature : std::size_t {
  kFlowDuration,
  kPacketSizeMean,
  kPacketSizeStd,
  kRequestRate,
  kIatMean,
  kPortEntropy,
  kDistinctDstPorts,
  kMqttPublishRate,
  kAddrConsistency,
  kProtoIcmp,
  kProtoTcp,
  kProtoUdp,
};

constexpr std::array<std::string_view, kBaseSyntheticFeatures> kBaseNames{
    "flow_duration",     "packet_size_mean",   "packet_size_std",  "request_rate",
    "iat_mean",          "port_entropy",       "distinct_dst_ports", "mqtt_publish_rate",
    "addr_consistency",  "proto_icmp",         "proto_tcp",        "proto_udp"};

constexpr std::size_t kContinuous = kProtoIcmp;

struct Gaussian {
  double mean;
  double sd;
};

enum class Protocol { kBaseline, kIcmp, kTcp, kUdp };

struct RowProfile {
  std::array<Gaussian, kContinuous> dist{{{8.0, 2.0},
                                          {500.0, 120.0},
                                          {150.0, 40.0},
                                          {10.0, 3.0},
                                          {0.10, 0.03},
                                          {1.0, 0.3},
                                          {3.0, 1.0},
                                          {1.0, 0.4},
                                          {0.95, 0.02}}};
  Protocol protocol = Protocol::kBaseline;
};

Protocol flood_protocol(std::string_view sub) {
  if (sub.starts_with("ICMP")) return Protocol::kIcmp;
  if (sub.starts_with("UDP")) return Protocol::kUdp;
  return Protocol::kTcp;
}

RowProfile attack_profile(AttackCategory cat, std::string_view sub) {
  RowProfile p;
  switch (cat) {
    case AttackCategory::kDdos:
      p.dist[kRequestRate] = {70.0, 10.0};
      p.dist[kIatMean] = {0.01, 0.004};
      p.dist[kFlowDuration] = {2.0, 1.0};
      p.dist[kPacketSizeMean] = {120.0, 40.0};
      p.protocol = flood_protocol(sub);
      break;
    case AttackCategory::kDos:
      p.dist[kRequestRate] = {55.0, 8.0};
      p.dist[kIatMean] = {0.02, 0.006};
      p.dist[kFlowDuration] = {3.0, 1.0};
      p.dist[kPacketSizeMean] = {150.0, 50.0};
      p.protocol = flood_protocol(sub);
      break;
    case AttackCategory::kRecon:
      p.dist[kRequestRate] = {40.0, 6.0};
      p.dist[kDistinctDstPorts] = {40.0, 10.0};
      p.dist[kPortEntropy] = {4.0, 0.5};
      p.protocol = sub == "Ping Sweep" ? Protocol::kIcmp : Protocol::kTcp;
      break;
    case AttackCategory::kSpoofing:
      p.dist[kRequestRate] = {40.0, 6.0};
      p.dist[kAddrConsistency] = {0.6, 0.1};
      break;
    case AttackCategory::kMqtt:
      p.dist[kRequestRate] = {50.0, 8.0};
      if (sub.ends_with("Publish Flood")) p.dist[kMqttPublishRate] = {30.0, 8.0};
      if (sub.ends_with("Connect Flood")) p.dist[kFlowDuration] = {1.0, 0.5};
      if (sub == "Malformed Data") p.dist[kPacketSizeStd] = {400.0, 60.0};
      p.protocol = Protocol::kTcp;
      break;
  }
  return p;
}

void draw_row(Rng& rng, const RowProfile& profile, std::span<double> out) {
  std::array<double, kBaseSyntheticFeatures> base{};
  for (std::size_t f = 0; f < kContinuous; ++f) {
    double v = std::max(0.0, rng.normal(profile.dist[f].mean, profile.dist[f].sd));
    if (f == kAddrConsistency) v = std::min(v, 1.0);
    base[f] = v;
  }
  Protocol proto = profile.protocol;
  const double u = rng.uniform01();
  if (proto == Protocol::kBaseline) {
    proto = u < 0.1 ? Protocol::kIcmp : u < 0.7 ? Protocol::kTcp : Protocol::kUdp;
  }
  base[kProtoIcmp] = proto == Protocol::kIcmp ? 1.0 : 0.0;
  base[kProtoTcp] = proto == Protocol::kTcp ? 1.0 : 0.0;
  base[kProtoUdp] = proto == Protocol::kUdp ? 1.0 : 0.0;

  for (std::size_t f = 0; f < out.size(); ++f) {
    out[f] = f < kBaseSyntheticFeatures ? base[f] : rng.normal(0.0, 1.0);
  }
}

}  // namespace

std::string_view category_name(AttackCategory c) {
  switch (c) {
    case AttackCategory::kDdos:
      return "DDoS";
    case AttackCategory::kDos:
      return "DoS";
    case AttackCategory::kRecon:
      return "Recon";
    case AttackCategory::kSpoofing:
      return "Spoofing";
    case AttackCategory::kMqtt:
      return "MQTT";
  }
  return "unknown";
}

std::optional<AttackCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kAttackCategoryCount; ++i) {
    const auto c = static_cast<AttackCategory>(i);
    const std::string_view n = category_name(c);
    if (n.size() == name.size() &&
        std::equal(n.begin(), n.end(), name.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) ==
                 std::tolower(static_cast<unsigned char>(b));
        })) {
      return c;
    }
  }
  return std::nullopt;
}

const std::vector<std::string>& subcategories(AttackCategory c) {
  static const std::vector<std::string> kFloods{"SYN Flood", "TCP Flood", "ICMP Flood",
                                                "UDP Flood"};
  static const std::vector<std::string> kRecon{"Ping Sweep", "Vulnerability Scan", "OS Scan",
                                               "Port Scan"};
  static const std::vector<std::string> kSpoofing{"ARP Spoofing"};
  static const std::vector<std::string> kMqtt{"Malformed Data", "DoS Connect Flood",
                                              "DDoS Connect Flood", "DoS Publish Flood",
                                              "DDoS Publish Flood"};
  switch (c) {
    case AttackCategory::kDdos:
    case AttackCategory::kDos:
      return kFloods;
    case AttackCategory::kRecon:
      return kRecon;
    case AttackCategory::kSpoofing:
      return kSpoofing;
    case AttackCategory::kMqtt:
      return kMqtt;
  }
  return kFloods;
}

std::optional<AttackCategory> category_of_label(std::string_view label) {
  const std::size_t dash = label.find('-');
  return parse_category(label.substr(0, dash));
}

void SyntheticSpec::validate() const {
  if (n_benign + n_attack < 2) throw ValidationError("synthetic: need at least 2 samples");
  if (n_features < 1) throw ValidationError("synthetic: need at least 1 feature");
  double sum = 0.0;
  for (double w : attack_mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("synthetic: attack mix weights must be non-negative");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ValidationError("synthetic: attack mix weights sum to " + std::to_string(sum) +
                          ", expected 1");
  }
}

std::vector<std::string> synthetic_feature_names(std::size_t n_features) {
  std::vector<std::string> names;
  for (std::size_t f = 0; f < n_features; ++f) {
    names.push_back(f < kBaseSyntheticFeatures
                        ? std::string(kBaseNames[f])
                        : "noise_" + std::to_string(f - kBaseSyntheticFeatures));
  }
  return names;
}

FlowDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_benign + spec.n_attack;
  Rng rng(spec.seed);

  Matrix features = Matrix::zeros(n, spec.n_features);
  Labels labels(n, 0);
  std::vector<std::string> categories(n);

  const RowProfile benign;
  for (std::size_t r = 0; r < spec.n_benign; ++r) {
    draw_row(rng, benign, features.row(r));
    categories[r] = "Benign";
  }
  for (std::size_t r = spec.n_benign; r < n; ++r) {
    const double u = rng.uniform01();
    std::size_t cat = 0;
    double acc = 0.0;
    for (; cat + 1 < kAttackCategoryCount; ++cat) {
      acc += spec.attack_mix[cat];
      if (u < acc) break;
    }
    // Skip zero-weight categories that rounding could otherwise land on.
    while (spec.attack_mix[cat] == 0.0) cat = cat == 0 ? kAttackCategoryCount - 1 : cat - 1;
    const auto category = static_cast<AttackCategory>(cat);
    const auto& subs = subcategories(category);
    const std::string& sub = subs[rng.below(subs.size())];
    draw_row(rng, attack_profile(category, sub), features.row(r));
    labels[r] = 1;
    categories[r] = std::string(category_name(category)) + "-" + sub;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  Matrix shuffled = features.select_rows(order);
  Labels shuffled_labels(n);
  std::vector<std::string> shuffled_categories(n);
  for (std::size_t i = 0; i < n; ++i) {
    shuffled_labels[i] = labels[order[i]];
    shuffled_categories[i] = std::move(categories[order[i]]);
  }

  const std::string source = "synthetic(benign=" + std::to_string(spec.n_benign) +
                             ",attack=" + std::to_string(spec.n_attack) +
                             ",seed=" + std::to_string(spec.seed) + ")";
  return FlowDataset(std::move(shuffled), std::move(shuffled_labels),
                     synthetic_feature_names(spec.n_features), source,
                     std::move(shuffled_categories));
}

}  // namespace elmddos
