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

#include "leximark/detect.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "leximark/csv.h"
#include "leximark/parallel.h"
#include "leximark/random.h"
#include "leximark/stats.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"

namespace leximark {
namespace {

absl::Status CheckNonEmpty(std::span<const double> members,
                           std::span<const double> nonmembers) {
  if (members.empty()) return absl::InvalidArgumentError("no member scores");
  if (nonmembers.empty()) {
    return absl::InvalidArgumentError("no nonmember scores");
  }
  return absl::OkStatus();
}

std::string LevelName(double level) { return FormatDouble(level); }

}  // namespace

absl::StatusOr<double> Auroc(std::span<const double> members,
                             std::span<const double> nonmembers) {
  LEXIMARK_RETURN_IF_ERROR(CheckNonEmpty(members, nonmembers));
  std::vector<double> sorted(nonmembers.begin(), nonmembers.end());
  std::sort(sorted.begin(), sorted.end());
  // Twice the Mann-Whitney count stays integral.
  std::uint64_t twice = 0;
  for (double m : members) {
    const auto lower = std::lower_bound(sorted.begin(), sorted.end(), m);
    const auto upper = std::upper_bound(lower, sorted.end(), m);
    twice += 2 * static_cast<std::uint64_t>(lower - sorted.begin()) +
             static_cast<std::uint64_t>(upper - lower);
  }
  return static_cast<double>(twice) /
         (2.0 * static_cast<double>(members.size()) *
          static_cast<double>(nonmembers.size()));
}

absl::StatusOr<double> TprAtFpr(std::span<const double> members,
                                std::span<const double> nonmembers,
                                double fpr_level) {
  LEXIMARK_RETURN_IF_ERROR(CheckNonEmpty(members, nonmembers));
  if (!(fpr_level >= 0.0 && fpr_level < 1.0)) {
    return absl::InvalidArgumentError(
        StrCat("fpr level must be in [0, 1), got ", fpr_level));
  }
  std::vector<double> sorted(nonmembers.begin(), nonmembers.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto allowed = static_cast<std::size_t>(std::floor(
      fpr_level * static_cast<double>(sorted.size()) + 1e-9));
  if (allowed >= sorted.size()) return 1.0;
  const double threshold = sorted[allowed];
  const auto hits = std::count_if(members.begin(), members.end(),
                                  [&](double m) { return m > threshold; });
  return static_cast<double>(hits) / static_cast<double>(members.size());
}

absl::StatusOr<WelchResult> WelchTTest(std::span<const double> members,
                                       std::span<const double> nonmembers) {
  if (members.size() < 2) {
    return absl::InvalidArgumentError("member side needs at least 2 scores");
  }
  if (nonmembers.size() < 2) {
    return absl::InvalidArgumentError(
        "nonmember side needs at least 2 scores");
  }
  const double n1 = static_cast<double>(members.size());
  const double n2 = static_cast<double>(nonmembers.size());
  const double v1 = stats::SampleVariance(members) / n1;
  const double v2 = stats::SampleVariance(nonmembers) / n2;
  if (!(v1 > 0.0)) {
    return absl::InvalidArgumentError("member side has zero variance");
  }
  if (!(v2 > 0.0)) {
    return absl::InvalidArgumentError("nonmember side has zero variance");
  }
  WelchResult out;
  const double se2 = v1 + v2;
  out.t = (stats::Mean(members) - stats::Mean(nonmembers)) / std::sqrt(se2);
  out.dof = se2 * se2 / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  LEXIMARK_ASSIGN_OR_RETURN(out.p_value,
                            stats::StudentTSurvival(out.t, out.dof));
  return out;
}

absl::StatusOr<std::vector<SweepResult>> DatasetInferenceSweep(
    std::span<const double> members, std::span<const double> nonmembers,
    const SweepConfig& config) {
  if (config.repetitions < 1) {
    return absl::InvalidArgumentError("repetitions must be at least 1");
  }
  if (!(config.member_subset_fraction > 0.0 &&
        config.member_subset_fraction <= 1.0)) {
    return absl::InvalidArgumentError(
        "member subset fraction must be in (0, 1]");
  }
  std::vector<double> member_pool(members.begin(), members.end());
  if (config.member_subset_fraction < 1.0) {
    Rng rng(DeriveSeed(config.seed, {0x7375627365746dULL}));
    const auto keep = static_cast<std::size_t>(std::ceil(
        config.member_subset_fraction * static_cast<double>(members.size()) -
        1e-9));
    member_pool.clear();
    for (std::size_t i : SampleIndices(rng, members.size(), keep)) {
      member_pool.push_back(members[i]);
    }
  }
  for (std::size_t size : config.group_sizes) {
    if (size < 2) {
      return absl::InvalidArgumentError("group sizes must be at least 2");
    }
    if (size > member_pool.size() || size > nonmembers.size()) {
      return absl::InvalidArgumentError(StrCat(
          "group size ", size, " exceeds the pools (", member_pool.size(),
          " member, ", nonmembers.size(), " nonmember)"));
    }
  }

  std::vector<SweepResult> out;
  for (std::size_t size : config.group_sizes) {
    std::vector<absl::StatusOr<double>> p(config.repetitions, 0.0);
    ParallelFor(config.repetitions, config.threads, [&](std::size_t rep) {
      Rng rng(DeriveSeed(config.seed, {size, rep}));
      std::vector<double> a;
      std::vector<double> b;
      for (std::size_t i : SampleIndices(rng, member_pool.size(), size)) {
        a.push_back(member_pool[i]);
      }
      for (std::size_t i : SampleIndices(rng, nonmembers.size(), size)) {
        b.push_back(nonmembers[i]);
      }
      absl::StatusOr<WelchResult> result = WelchTTest(a, b);
      if (result.ok()) {
        p[rep] = result->p_value;
      } else {
        p[rep] = result.status();
      }
    });
    double sum = 0.0;
    for (std::size_t rep = 0; rep < p.size(); ++rep) {
      if (!p[rep].ok()) {
        return absl::InvalidArgumentError(
            StrCat("group size ", size, ", repetition ", rep, ": ",
                         p[rep].status().message()));
      }
      sum += *p[rep];
    }
    out.push_back({size, sum / static_cast<double>(config.repetitions),
                   config.repetitions, config.seed});
  }
  return out;
}

absl::StatusOr<std::vector<std::size_t>> ParseGroupSizes(
    std::string_view spec) {
  std::vector<std::size_t> sizes;
  for (std::string_view item : SplitSkipEmpty(spec, ",")) {
    item = StripWhitespace(item);
    std::vector<std::string_view> parts = Split(item, ':');
    std::vector<std::size_t> values;
    for (std::string_view part : parts) {
      std::size_t value = 0;
      if (!ParseSize(part, &value)) {
        return absl::InvalidArgumentError(
            StrCat("bad group size '", item, "'"));
      }
      values.push_back(value);
    }
    if (values.size() == 1) {
      sizes.push_back(values[0]);
    } else if (values.size() <= 3) {
      const std::size_t step = values.size() == 3 ? values[2] : 1;
      if (step == 0 || values[0] > values[1]) {
        return absl::InvalidArgumentError(
            StrCat("bad group size range '", item, "'"));
      }
      for (std::size_t s = values[0]; s <= values[1]; s += step) {
        sizes.push_back(s);
      }
    } else {
      return absl::InvalidArgumentError(
          StrCat("bad group size '", item, "'"));
    }
  }
  if (sizes.empty()) return absl::InvalidArgumentError("no group sizes");
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.front() < 2) {
    return absl::InvalidArgumentError("group sizes must be at least 2");
  }
  return sizes;
}

absl::StatusOr<std::vector<DetectionReport>> BuildReports(
    const ScoreTable& table, std::span<const std::string> methods,
    std::span<const double> fpr_levels) {
  std::vector<std::string> names(methods.begin(), methods.end());
  if (names.empty()) names = table.methods;
  if (names.empty()) return absl::InvalidArgumentError("no score columns");
  std::vector<DetectionReport> out;
  for (const std::string& name : names) {
    LEXIMARK_ASSIGN_OR_RETURN(LabeledScores scores, SplitByLabel(table, name));
    DetectionReport report;
    report.method = name;
    report.n_member = scores.members.size();
    report.n_nonmember = scores.nonmembers.size();
    LEXIMARK_ASSIGN_OR_RETURN(report.auroc,
                              Auroc(scores.members, scores.nonmembers));
    for (double level : fpr_levels) {
      LEXIMARK_ASSIGN_OR_RETURN(
          double tpr, TprAtFpr(scores.members, scores.nonmembers, level));
      report.tpr_at_fpr.emplace_back(level, tpr);
    }
    out.push_back(std::move(report));
  }
  return out;
}

std::string SerializeReports(std::span<const DetectionReport> reports) {
  CsvRow header = {"method", "auroc"};
  if (!reports.empty()) {
    for (const auto& [level, tpr] : reports.front().tpr_at_fpr) {
      header.push_back(StrCat("tpr_at_", LevelName(level)));
    }
  }
  header.push_back("n_member");
  header.push_back("n_nonmember");
  std::string out = CsvLine(header) + "\n";
  for (const DetectionReport& report : reports) {
    CsvRow row = {report.method, FormatDouble(report.auroc)};
    for (const auto& [level, tpr] : report.tpr_at_fpr) {
      row.push_back(FormatDouble(tpr));
    }
    row.push_back(StrCat(report.n_member));
    row.push_back(StrCat(report.n_nonmember));
    out += CsvLine(row) + "\n";
  }
  return out;
}

std::string FormatReportTable(std::span<const DetectionReport> reports) {
  std::size_t width = 6;
  for (const DetectionReport& report : reports) {
    width = std::max(width, report.method.size());
  }
  std::string out = absl::StrFormat("%-*s  %7s", width, "method", "AUROC");
  if (!reports.empty()) {
    for (const auto& [level, tpr] : reports.front().tpr_at_fpr) {
      out += absl::StrFormat(
          "  %12s", StrCat("TPR@", FormatDouble(level * 100.0), "%"));
    }
  }
  out += absl::StrFormat("  %8s  %11s\n", "members", "nonmembers");
  for (const DetectionReport& report : reports) {
    out += absl::StrFormat("%-*s  %6.1f%%", width, report.method,
                           report.auroc * 100.0);
    for (const auto& [level, tpr] : report.tpr_at_fpr) {
      out += absl::StrFormat("  %11.1f%%", tpr * 100.0);
    }
    out += absl::StrFormat("  %8d  %11d\n", report.n_member,
                           report.n_nonmember);
  }
  return out;
}

std::string SerializeSweep(std::span<const SweepResult> results) {
  std::string out = "group_size,mean_p,repetitions,seed\n";
  for (const SweepResult& r : results) {
    out += StrCat(r.group_size, ",", FormatDouble(r.mean_p), ",",
                        r.repetitions, ",", r.seed, "\n");
  }
  return out;
}

}  // namespace leximark
