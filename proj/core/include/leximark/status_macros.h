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

#ifndef LEXIMARK_STATUS_MACROS_H_
#define LEXIMARK_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define LEXIMARK_RETURN_IF_ERROR(expr)        \
  do {                                        \
    const absl::Status _lm_status = (expr);   \
    if (!_lm_status.ok()) return _lm_status;  \
  } while (0)

#define LEXIMARK_CONCAT_INNER_(a, b) a##b
#define LEXIMARK_CONCAT_(a, b) LEXIMARK_CONCAT_INNER_(a, b)

#define LEXIMARK_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                    \
  if (!tmp.ok()) return std::move(tmp).status();         \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (an absl::StatusOr<T>), returning its status on failure
// and otherwise move-assigning the value into `lhs`.
#define LEXIMARK_ASSIGN_OR_RETURN(lhs, rexpr) \
  LEXIMARK_ASSIGN_OR_RETURN_IMPL_(            \
      LEXIMARK_CONCAT_(_lm_statusor_, __LINE__), lhs, rexpr)

#endif  // LEXIMARK_STATUS_MACROS_H_
