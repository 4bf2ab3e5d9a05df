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

#ifndef ELMDDOS_SYNTHETIC_H_
#define ELMDDOS_SYNTHETIC_H_

// Synthetic flow records for running the pipeline without the real corpus.
//
// Every row draws its features independently from N(mean, sd), clamped at 0
// (addr_consistency is clamped to [0, 1]). Benign rows use the baseline
// column; an attack row starts from the baseline and overrides the listed
// features for its category:
//
//   feature             baseline       attack overrides
//   flow_duration       8 +- 2         DDoS 2+-1, DoS 3+-1, MQTT connect floods 1+-0.5
//   packet_size_mean    500 +- 120     DDoS 120+-40, DoS 150+-50
//   packet_size_std     150 +- 40      MQTT Malformed Data 400+-60
//   request_rate        10 +- 3        DDoS 70+-10, DoS 55+-8, MQTT 50+-8,
//                                      Recon 40+-6, Spoofing 40+-6
//   iat_mean            0.10 +- 0.03   DDoS 0.01+-0.004, DoS 0.02+-0.006
//   port_entropy        1.0 +- 0.3     Recon 4+-0.5
//   distinct_dst_ports  3 +- 1         Recon 40+-10
//   mqtt_publish_rate   1.0 +- 0.4     MQTT publish floods 30+-8
//   addr_consistency    0.95 +- 0.02   Spoofing 0.6+-0.1
//   proto_icmp/tcp/udp  one-hot; benign icmp 0.1 / tcp 0.6 / udp 0.3.
//                       SYN/TCP floods -> tcp, ICMP flood and Ping Sweep ->
//                       icmp, UDP flood -> udp, other Recon and MQTT -> tcp,
//                       Spoofing keeps the baseline mix.
//
// Columns past the twelfth are "noise_<k>" ~ N(0, 1) for every row; fewer
// than twelve keeps the leading ones. Rows are generated benign first, then
// attacks, then shuffled. All draws come from Rng(seed) in that order.
//
// The request-rate means of benign and any attack mixture differ by more
// than three pooled standard deviations, which makes the data separable by
// construction.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elmddos/dataset.h"

namespace elmddos {

enum class AttackCategory { kDdos = 0, kDos = 1, kRecon = 2, kSpoofing = 3, kMqtt = 4 };

inline constexpr std::size_t kAttackCategoryCount = 5;
inline constexpr std::size_t kBaseSyntheticFeatures = 12;

std::string_view category_name(AttackCategory c);
std::optional<AttackCategory> parse_category(std::string_view name);
// Sub-category names for a category, e.g. "SYN Flood".
const std::vector<std::string>& subcategories(AttackCategory c);
// Category of a label such as "DDoS-SYN Flood"; nullopt for benign/unknown.
std::optional<AttackCategory> category_of_label(std::string_view label);

struct SyntheticSpec {
  std::size_t n_benign = 2000;
  std::size_t n_attack = 2000;
  // Weights over DDoS, DoS, Recon, Spoofing, MQTT; must sum to 1.
  std::array<double, kAttackCategoryCount> attack_mix{0.2, 0.2, 0.2, 0.2, 0.2};
  std::uint64_t seed = 7;
  std::size_t n_features = kBaseSyntheticFeatures;

  // Throws ValidationError.
  void validate() const;
};

std::vector<std::string> synthetic_feature_names(std::size_t n_features);

// Labels are 0/1; categories() holds "Benign" or "<Category>-<Sub-category>".
FlowDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace elmddos

#endif  // ELMDDOS_SYNTHETIC_H_
