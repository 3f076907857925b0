// Copyright (c) 2026 the codemix authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codemix {

// ---------------------------------------------------------------------------
// UTF-8 and script helpers. Tagging only needs coarse script classes, so the
// decoder is permissive: malformed bytes decode to U+FFFD and advance by one.
// ---------------------------------------------------------------------------

inline char32_t utf8_next(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  const auto cont = [&](std::size_t k) {
    return k < s.size() && (byte(k) & 0xC0) == 0x80;
  };
  unsigned char c = byte(i);
  if (c < 0x80) {
    i += 1;
    return c;
  }
  if ((c >> 5) == 0x6 && cont(i + 1)) {
    char32_t cp = ((c & 0x1Fu) << 6) | (byte(i + 1) & 0x3Fu);
    i += 2;
    return cp;
  }
  if ((c >> 4) == 0xE && cont(i + 1) && cont(i + 2)) {
    char32_t cp = ((c & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) |
                  (byte(i + 2) & 0x3Fu);
    i += 3;
    return cp;
  }
  if ((c >> 3) == 0x1E && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    char32_t cp = ((c & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                  ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
    i += 4;
    return cp;
  }
  i += 1;
  return 0xFFFD;
}

enum class Script { latin, devanagari, kannada, other };

inline bool is_digit_cp(char32_t cp) {
  return (cp >= U'0' && cp <= U'9') ||
         (cp >= 0x0966 && cp <= 0x096F) ||   // Devanagari digits
         (cp >= 0x0CE6 && cp <= 0x0CEF);     // Kannada digits
}

inline bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x00A1 && cp <= 0x00BF) ||
         (cp >= 0x2000 && cp <= 0x206F) ||   // general punctuation
         cp == 0x0964 || cp == 0x0965;       // danda, double danda
}

inline Script script_of_cp(char32_t cp) {
  if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') ||
      (cp >= 0x00C0 && cp <= 0x024F)) {
    return Script::latin;
  }
  if (cp >= 0x0900 && cp <= 0x097F && cp != 0x0964 && cp != 0x0965 &&
      !(cp >= 0x0966 && cp <= 0x096F)) {
    return Script::devanagari;
  }
  if (cp >= 0x0C80 && cp <= 0x0CFF && !(cp >= 0x0CE6 && cp <= 0x0CEF)) {
    return Script::kannada;
  }
  return Script::other;
}

/// Script with the most letter codepoints in `s`. Native scripts win ties
/// against Latin. Returns Script::other when no letters are present.
inline Script dominant_script(std::string_view s) {
  std::size_t latin = 0, deva = 0, kan = 0;
  for (std::size_t i = 0; i < s.size();) {
    switch (script_of_cp(utf8_next(s, i))) {
      case Script::latin: ++latin; break;
      case Script::devanagari: ++deva; break;
      case Script::kannada: ++kan; break;
      case Script::other: break;
    }
  }
  if (deva == 0 && kan == 0 && latin == 0) return Script::other;
  if (deva >= kan && deva >= latin) return Script::devanagari;
  if (kan >= latin) return Script::kannada;
  return Script::latin;
}

inline bool is_punct_only(std::string_view s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size();) {
    if (!is_punct_cp(utf8_next(s, i))) return false;
  }
  return true;
}

/// At least one digit, and nothing except digits and punctuation ("42", "3.5").
inline bool is_digit_only(std::string_view s) {
  if (s.empty()) return false;
  bool digit_seen = false;
  for (std::size_t i = 0; i < s.size();) {
    char32_t cp = utf8_next(s, i);
    if (is_digit_cp(cp)) {
      digit_seen = true;
    } else if (!is_punct_cp(cp)) {
      return false;
    }
  }
  return digit_seen;
}

// ---------------------------------------------------------------------------
// Plain string utilities. Case folding is ASCII-only: lexicon keys are
// English, and multi-byte UTF-8 sequences pass through untouched.
// ---------------------------------------------------------------------------

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space_byte(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space_byte(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

/// Trim and collapse internal whitespace runs to single spaces.
inline std::string normalize_spaces(std::string_view s) {
  return join(split_whitespace(s));
}

inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace codemix
