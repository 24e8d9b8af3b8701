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

#ifndef LEXIMARK_CSV_H_
#define LEXIMARK_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace leximark {

using CsvRow = std::vector<std::string>;

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted.
std::string CsvField(std::string_view field);
std::string CsvLine(const CsvRow& fields);

// Parses RFC 4180 text. Blank lines are skipped.
absl::StatusOr<std::vector<CsvRow>> ParseCsv(std::string_view contents);

// Shortest "%g" text (6 to 17 digits) that parses back to `value`.
std::string FormatDouble(double value);

}  // namespace leximark

#endif  // LEXIMARK_CSV_H_
