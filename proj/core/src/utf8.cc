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

#include "leximark/strings.h"
#include "leximark/utf8.h"

namespace leximark {
namespace utf8 {

CodePoint Decode(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
    min_value = 0x10000;
  } else {
    return {kReplacementChar, 1};
  }
  if (pos + length > text.size()) return {kReplacementChar, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) return {kReplacementChar, 1};
    value = (value << 6) | (cont & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    return {kReplacementChar, 1};
  }
  return {value, length};
}

void Append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(char32_t cp) {
  std::string out;
  Append(out, cp);
  return out;
}

bool IsValid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = Decode(text, pos);
    if (cp.value == kReplacementChar && cp.length == 1 &&
        static_cast<unsigned char>(text[pos]) >= 0x80) {
      // A literal U+FFFD is three bytes, so length 1 means a decode error.
      return false;
    }
    pos += cp.length;
  }
  return true;
}

bool IsWhitespace(char32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\v':
    case '\f':
    case '\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsDigit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsLetter(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  if (cp < 0x100) {
    if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
    return cp >= 0xC0 && cp != 0xD7 && cp != 0xF7;
  }
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xE000 && cp <= 0xF8FF) return false;  // private use
  if (cp >= 0xFDD0 && cp <= 0xFDEF) return false;  // noncharacters
  if (cp >= 0xFE10 && cp <= 0xFE1F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  if (cp >= 0xFFF0 && cp <= 0xFFFF) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;  // emoji and pictographs
  if (cp >= 0xE0000) return false;
  return true;
}

bool IsApostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

namespace {

// Latin Extended-A pairs alternate upper/lower; the parity of the uppercase
// member flips at U+0139 and again at U+014A and U+0179.
bool LatinExtendedAUpper(char32_t cp) {
  if (cp == 0x178) return true;
  if (cp <= 0x137) return cp % 2 == 0;
  if (cp >= 0x139 && cp <= 0x148) return cp % 2 == 1;
  if (cp >= 0x14A && cp <= 0x177) return cp % 2 == 0;
  if (cp >= 0x179 && cp <= 0x17E) return cp % 2 == 1;
  return false;
}

bool LatinExtendedALower(char32_t cp) {
  if (cp <= 0x137) return cp % 2 == 1;
  if (cp >= 0x13A && cp <= 0x148) return cp % 2 == 0;
  if (cp >= 0x14B && cp <= 0x177) return cp % 2 == 1;
  if (cp >= 0x17A && cp <= 0x17E) return cp % 2 == 0;
  return false;
}

}  // namespace

bool IsUpper(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE) return cp != 0xD7;
  if (cp >= 0x100 && cp <= 0x17F) return LatinExtendedAUpper(cp);
  if (cp >= 0x391 && cp <= 0x3A9) return cp != 0x3A2;
  if (cp >= 0x400 && cp <= 0x42F) return true;
  return false;
}

char32_t ToLower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x178) return 0xFF;
    return LatinExtendedAUpper(cp) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

char32_t ToUpper(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 32;
  if (cp < 0x80) return cp;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 32;
  if (cp == 0xFF) return 0x178;
  if (cp >= 0x100 && cp <= 0x17F) {
    return LatinExtendedALower(cp) ? cp - 1 : cp;
  }
  if (cp >= 0x3B1 && cp <= 0x3C9 && cp != 0x3C2) return cp - 32;
  if (cp >= 0x430 && cp <= 0x44F) return cp - 32;
  if (cp >= 0x450 && cp <= 0x45F) return cp - 80;
  return cp;
}

std::string Lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = Decode(text, pos);
    if (cp.value == kReplacementChar && cp.length == 1) {
      out.push_back(text[pos]);  // keep invalid bytes verbatim
    } else {
      Append(out, ToLower(cp.value));
    }
    pos += cp.length;
  }
  return out;
}

std::string CapitalizeFirst(std::string_view word) {
  if (word.empty()) return std::string();
  const CodePoint first = Decode(word, 0);
  std::string out = Encode(ToUpper(first.value));
  out.append(word.substr(first.length));
  return out;
}

bool StartsUpper(std::string_view word) {
  return !word.empty() && IsUpper(Decode(word, 0).value);
}

bool IsAllLetters(std::string_view word) {
  if (word.empty()) return false;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const CodePoint cp = Decode(word, pos);
    if (!IsLetter(cp.value) || (cp.value == kReplacementChar)) return false;
    pos += cp.length;
  }
  return true;
}

}  // namespace utf8
}  // namespace leximark
