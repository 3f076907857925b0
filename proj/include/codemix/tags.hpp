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

#include <string>
#include <vector>

#include "codemix/lang.hpp"

namespace codemix {

/// A surface form with its language tag.
struct TokenTag {
  std::string form;
  Lang lang;

  friend bool operator==(const TokenTag& a, const TokenTag& b) {
    return a.form == b.form && a.lang == b.lang;
  }
};

inline std::string tags_text(const std::vector<TokenTag>& tags) {
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ' ';
    out += tags[i].form;
  }
  return out;
}

}  // namespace codemix
