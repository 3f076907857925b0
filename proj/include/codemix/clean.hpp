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

#include <istream>
#include <ostream>
#include <regex>
#include <string>

#include "codemix/text.hpp"

namespace codemix {

/// Strips social-media noise from one utterance: URLs (scheme-prefixed or
/// www.), @-mentions, and #hashtags, in that order, then collapses runs
/// of whitespace. Mentions, hashtags, and www-URLs must start a token so
/// that forms like "mid@text" survive; scheme URLs match anywhere, since
/// "://" cannot occur in ordinary words. May return an empty string when
/// nothing survives.
inline std::string clean_line(const std::string& line) {
  static const std::regex url_re(R"([A-Za-z][A-Za-z0-9+.\-]*://\S+)");
  static const std::regex www_re(R"((^|\s)www\.\S+)");
  static const std::regex mention_re(R"((^|\s)@[A-Za-z0-9_]+)");
  static const std::regex hashtag_re(R"((^|\s)#[A-Za-z0-9_]+)");

  std::string out = std::regex_replace(line, url_re, " ");
  out = std::regex_replace(out, www_re, " ");
  out = std::regex_replace(out, mention_re, " ");
  out = std::regex_replace(out, hashtag_re, " ");
  return normalize_spaces(out);
}

struct CleanStats {
  std::size_t lines_in = 0;
  std::size_t lines_kept = 0;
  std::size_t lines_dropped = 0;
};

/// Cleans a stream line by line, writing surviving utterances and
/// dropping the ones cleaning empties out.
inline CleanStats clean_stream(std::istream& in, std::ostream& out) {
  CleanStats stats;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++stats.lines_in;
    std::string cleaned = clean_line(line);
    if (cleaned.empty()) {
      ++stats.lines_dropped;
      continue;
    }
    out << cleaned << '\n';
    ++stats.lines_kept;
  }
  return stats;
}

}  // namespace codemix
