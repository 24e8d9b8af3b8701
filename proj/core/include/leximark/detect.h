// Copyright 2026 The LexiMark Authors
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

#ifndef LEXIMARK_DETECT_H_
#define LEXIMARK_DETECT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "leximark/mia.h"

namespace leximark {

// Mann-Whitney estimate of P(member score > nonmember score), ties counted
// one half.
absl::StatusOr<double> Auroc(std::span<const double> members,
                             std::span<const double> nonmembers);

// A document is called a member when its score is strictly above the
// threshold. The threshold is the smallest nonmember score whose false
// positive rate is at most `fpr_level`; the result is the member share above
// it.
absl::StatusOr<double> TprAtFpr(std::span<const double> members,
                                std::span<const double> nonmembers,
                                double fpr_level);

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 0.0;  // one-sided, H1: mean(member) > mean(nonmember)
};

absl::StatusOr<WelchResult> WelchTTest(std::span<const double> members,
                                       std::span<const double> nonmembers);

struct SweepConfig {
  std::vector<std::size_t> group_sizes;
  std::size_t repetitions = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  // Share of the member pool kept (seeded draw) before sweeping.
  double member_subset_fraction = 1.0;
};

struct SweepResult {
  std::size_t group_size = 0;
  double mean_p = 0.0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// For each size, draws `size` scores without replacement from each pool in
// every repetition and averages the one-sided Welch p-value. Repetition r of
// size s uses its own stream derived from (seed, s, r).
absl::StatusOr<std::vector<SweepResult>> DatasetInferenceSweep(
    std::span<const double> members, std::span<const double> nonmembers,
    const SweepConfig& config);

// "2:100" (inclusive range), "2:100:2" (with step), "2,4,8", or a
// comma-separated mix. Sizes are sorted and deduplicated; each must be >= 2.
absl::StatusOr<std::vector<std::size_t>> ParseGroupSizes(std::string_view spec);

struct DetectionReport {
  std::string method;
  double auroc = 0.0;
  std::vector<std::pair<double, double>> tpr_at_fpr;  // (level, tpr)
  std::size_t n_member = 0;
  std::size_t n_nonmember = 0;
};

// One report per requested method (all score columns when empty).
absl::StatusOr<std::vector<DetectionReport>> BuildReports(
    const ScoreTable& table, std::span<const std::string> methods,
    std::span<const double> fpr_levels);

// method,auroc,tpr_at_<level>...,n_member,n_nonmember
std::string SerializeReports(std::span<const DetectionReport> reports);
std::string FormatReportTable(std::span<const DetectionReport> reports);

// group_size,mean_p,repetitions,seed
std::string SerializeSweep(std::span<const SweepResult> results);

}  // namespace leximark

#endif  // LEXIMARK_DETECT_H_
