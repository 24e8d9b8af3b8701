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

#ifndef LEXIMARK_STATS_H_
#define LEXIMARK_STATS_H_

#include <span>

#include "absl/status/statusor.h"

namespace leximark::stats {

double Mean(std::span<const double> values);
// Unbiased (n - 1) sample variance.
double SampleVariance(std::span<const double> values);

// I_x(a, b) for a, b > 0 and x in [0, 1].
absl::StatusOr<double> RegularizedIncompleteBeta(double a, double b, double x);

// P(T <= t) and P(T > t) for Student's t with `dof` > 0 (non-integer
// allowed).
absl::StatusOr<double> StudentTCdf(double t, double dof);
absl::StatusOr<double> StudentTSurvival(double t, double dof);

}  // namespace leximark::stats

#endif  // LEXIMARK_STATS_H_
