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

#include <map>
#include <vector>

#include "codemix/errors.hpp"
#include "codemix/lang.hpp"
#include "codemix/tags.hpp"

namespace codemix {

/// Token tallies feeding the code-mixing index: per-language counts over
/// the language-dependent tokens, with other-tagged tokens held apart.
struct CmiInputs {
  std::map<Lang, int> per_language;  // t_Li, language-dependent tags only
  int n_lang_dependent = 0;          // N(x) = sum of per_language counts
  int n_other = 0;
  int total_len = 0;                 // all tokens

  static CmiInputs from_tags(const std::vector<TokenTag>& tags) {
    CmiInputs in;
    in.total_len = static_cast<int>(tags.size());
    for (const TokenTag& t : tags) {
      if (t.lang.is_other()) {
        ++in.n_other;
      } else {
        ++in.per_language[t.lang];
        ++in.n_lang_dependent;
      }
    }
    return in;
  }

  int max_language_count() const {
    int best = 0;
    for (const auto& [lang, count] : per_language) {
      if (count > best) best = count;
    }
    return best;
  }
};

/// Code-mixing index of one utterance:
/// (N(x) - max_i t_Li) / (2 N(x)) for N(x) > 0, else 0, where N(x) counts
/// the language-dependent tokens and t_Li the tokens of language Li.
inline double cmi_utterance(const CmiInputs& in) {
  if (in.n_lang_dependent <= 0) return 0.0;
  return (in.n_lang_dependent - in.max_language_count()) /
         (2.0 * in.n_lang_dependent);
}

inline double cmi_utterance(const std::vector<TokenTag>& tags) {
  return cmi_utterance(CmiInputs::from_tags(tags));
}

/// Corpus-level code-mixing index: the mean of the per-utterance values.
inline double cmi_corpus(const std::vector<double>& values) {
  if (values.empty()) {
    throw EmptyCorpusError("cmi_corpus: no utterance values");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

/// Integration index: switch points between consecutive language-dependent
/// tokens (other-tagged tokens are skipped when pairing, so they neither
/// create nor block a switch), divided by l - 1 word boundaries where l
/// counts all tokens. Utterances with l <= 1 score 0.
inline double i_index(const std::vector<TokenTag>& tags) {
  const int l = static_cast<int>(tags.size());
  if (l <= 1) return 0.0;
  int switches = 0;
  const Lang* prev = nullptr;
  for (const TokenTag& t : tags) {
    if (t.lang.is_other()) continue;
    if (prev && *prev != t.lang) ++switches;
    prev = &t.lang;
  }
  return static_cast<double>(switches) / static_cast<double>(l - 1);
}

enum class UtteranceClass {
  codeswitched,  // at least one eng and one native token
  english_only,  // eng present, no native
  native_only,   // native present, no eng
  other_only,    // neither present
};

inline const char* utterance_class_name(UtteranceClass c) {
  switch (c) {
    case UtteranceClass::codeswitched: return "codeswitched";
    case UtteranceClass::english_only: return "english_only";
    case UtteranceClass::native_only: return "native_only";
    case UtteranceClass::other_only: return "other_only";
  }
  return "?";
}

inline UtteranceClass classify_utterance(const std::vector<TokenTag>& tags) {
  bool has_eng = false;
  bool has_native = false;
  for (const TokenTag& t : tags) {
    if (t.lang.is_eng()) has_eng = true;
    if (t.lang.is_native()) has_native = true;
  }
  if (has_eng && has_native) return UtteranceClass::codeswitched;
  if (has_eng) return UtteranceClass::english_only;
  if (has_native) return UtteranceClass::native_only;
  return UtteranceClass::other_only;
}

}  // namespace codemix
