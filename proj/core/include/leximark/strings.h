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

#ifndef LEXIMARK_STRINGS_H_
#define LEXIMARK_STRINGS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

// The packaged Abseil is built with its own string_view type, which does not
// accept std::string_view. These helpers take std::string_view throughout.
namespace leximark {
namespace strings_internal {

template <typename T>
decltype(auto) Bridge(const T& value) {
  if constexpr (std::is_same_v<T, std::string_view>) {
    return absl::string_view(value.data(), value.size());
  } else {
    return (value);
  }
}

}  // namespace strings_internal

inline std::string_view ToStd(absl::string_view s) {
  return {s.data(), s.size()};
}

template <typename... Args>
std::string StrCat(const Args&... args) {
  return absl::StrCat(strings_internal::Bridge(args)...);
}

template <typename... Args>
void StrAppend(std::string* out, const Args&... args) {
  absl::StrAppend(out, strings_internal::Bridge(args)...);
}

// Splits on every occurrence of `delim`; empty pieces are kept.
std::vector<std::string_view> Split(std::string_view text, char delim);
// Splits on any of `delims`, dropping empty pieces.
std::vector<std::string_view> SplitSkipEmpty(std::string_view text,
                                             std::string_view delims);

// ASCII whitespace.
std::string_view StripWhitespace(std::string_view text);
std::string_view StripLeadingWhitespace(std::string_view text);
std::string_view StripTrailingWhitespace(std::string_view text);

bool ConsumePrefix(std::string_view* text, std::string_view prefix);
bool ConsumeSuffix(std::string_view* text, std::string_view suffix);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

std::string ReplaceAll(std::string_view text, std::string_view from,
                       std::string_view to);

// Whole-string numeric parsing after trimming ASCII whitespace.
bool ParseUint(std::string_view text, std::uint64_t* out);
bool ParseInt(std::string_view text, std::int64_t* out);
bool ParseHex(std::string_view text, std::uint32_t* out);
bool ParseDouble(std::string_view text, double* out);

template <typename T>
bool ParseSize(std::string_view text, T* out) {
  static_assert(std::is_unsigned_v<T>);
  std::uint64_t value = 0;
  if (!ParseUint(text, &value) || value > static_cast<std::uint64_t>(T(~T(0)))) {
    return false;
  }
  *out = static_cast<T>(value);
  return true;
}

}  // namespace leximark

#endif  // LEXIMARK_STRINGS_H_
