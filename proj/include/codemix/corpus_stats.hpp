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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "codemix/generator.hpp"
#include "codemix/metrics.hpp"
#include "codemix/text.hpp"

namespace codemix {

/// Corpus-level statistics over generated variants: vocabulary sizes per
/// language class, utterance classification counts, and metric averages.
struct CorpusStats {
  std::map<std::string, std::size_t> vocab_by_language;  // code -> size
  std::size_t other_vocab = 0;

  std::size_t codeswitched = 0;
  std::size_t english_only = 0;
  std::size_t native_only = 0;
  std::size_t other_only = 0;

  std::size_t total_unique = 0;   // distinct assembled texts
  std::size_t total_variants = 0;
  double average_length = 0.0;    // tokens per variant
  double c_avg = 0.0;
  double mean_i_index = 0.0;

  std::size_t total_vocab() const {
    std::size_t total = other_vocab;
    for (const auto& [code, size] : vocab_by_language) total += size;
    return total;
  }

  std::size_t native_vocab() const {
    std::size_t total = 0;
    for (const auto& [code, size] : vocab_by_language) {
      if (code != "eng") total += size;
    }
    return total;
  }

  std::size_t classified_total() const {
    return codeswitched + english_only + native_only + other_only;
  }
};

/// Tallies statistics over all variants. Averages (length, Cavg, mean
/// I-index) run over every variant; classification runs once per distinct
/// assembled text, on its first occurrence, so the class counts sum to
/// the unique-utterance count. Vocabulary collects unique case-folded
/// forms per language class, skipping punctuation-only forms; digit-only
/// and other-lexicon forms arrive tagged other and land in the other
/// vocabulary.
inline CorpusStats corpus_stats(const std::vector<Variant>& variants) {
  if (variants.empty()) {
    throw EmptyCorpusError("corpus_stats: no variants");
  }
  CorpusStats stats;
  stats.total_variants = variants.size();

  std::map<std::string, std::set<std::string>> vocab;
  std::set<std::string> other_vocab;
  std::set<std::string> seen_texts;
  std::vector<double> cmi_values;
  cmi_values.reserve(variants.size());
  double length_sum = 0.0;
  double i_sum = 0.0;

  for (const Variant& variant : variants) {
    cmi_values.push_back(variant.cmi);
    i_sum += variant.i_index;
    length_sum += static_cast<double>(variant.tokens.size());

    for (const TokenTag& token : variant.tokens) {
      if (is_punct_only(token.form)) continue;
      std::string folded = to_lower(token.form);
      if (token.lang.is_other()) {
        other_vocab.insert(std::move(folded));
      } else {
        vocab[token.lang.code()].insert(std::move(folded));
      }
    }

    if (seen_texts.insert(variant.text()).second) {
      switch (classify_utterance(variant.tokens)) {
        case UtteranceClass::codeswitched: ++stats.codeswitched; break;
        case UtteranceClass::english_only: ++stats.english_only; break;
        case UtteranceClass::native_only: ++stats.native_only; break;
        case UtteranceClass::other_only: ++stats.other_only; break;
      }
    }
  }

  for (const auto& [code, forms] : vocab) {
    stats.vocab_by_language[code] = forms.size();
  }
  stats.other_vocab = other_vocab.size();
  stats.total_unique = seen_texts.size();
  stats.average_length = length_sum / static_cast<double>(variants.size());
  stats.c_avg = cmi_corpus(cmi_values);
  stats.mean_i_index = i_sum / static_cast<double>(variants.size());
  return stats;
}

}  // namespace codemix
