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

#ifndef LEXIMARK_UTF8_H_
#define LEXIMARK_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace leximark {
namespace utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// One decoded code point and the number of bytes it occupied. Invalid
// sequences decode as kReplacementChar with length 1 so iteration always
// makes progress.
struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint Decode(std::string_view text, std::size_t pos);
void Append(std::string& out, char32_t cp);
std::string Encode(char32_t cp);

bool IsValid(std::string_view text);

// Letter classification used by the word tokenizer. ASCII letters, Latin-1
// letters and every code point >= U+0100 outside the punctuation, symbol,
// space and control blocks count as letters.
bool IsLetter(char32_t cp);
bool IsDigit(char32_t cp);
bool IsUpper(char32_t cp);
bool IsWhitespace(char32_t cp);
bool IsApostrophe(char32_t cp);

char32_t ToLower(char32_t cp);
char32_t ToUpper(char32_t cp);

// Case folding is per code point via ToLower.
std::string Lowercase(std::string_view text);

// Uppercases the first code point of `word`, leaving the rest untouched.
std::string CapitalizeFirst(std::string_view word);
bool StartsUpper(std::string_view word);

// True when every code point of `word` is a letter (and it is non-empty).
bool IsAllLetters(std::string_view word);

}  // namespace utf8
}  // namespace leximark

#endif  // LEXIMARK_UTF8_H_
