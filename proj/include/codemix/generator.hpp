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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codemix/metrics.hpp"
#include "codemix/segmenter.hpp"
#include "codemix/tagger.hpp"
#include "codemix/translation.hpp"

namespace codemix {

inline std::string mask_to_string(const std::vector<std::uint8_t>& mask) {
  std::string out;
  out.reserve(mask.size());
  for (std::uint8_t bit : mask) out.push_back(bit ? '1' : '0');
  return out;
}

/// One code-switched rendering of a sentence: a translation mask (one bit
/// per segment, 1 = translated to the native target), the assembled tagged
/// tokens, and the mixing scores.
struct Variant {
  std::string sentence_id;
  std::vector<std::uint8_t> mask;
  std::vector<TokenTag> tokens;
  double cmi = 0.0;
  double i_index = 0.0;
  std::optional<std::string> label;
  std::string target_code;

  std::string mask_string() const { return mask_to_string(mask); }
  std::string text() const { return tags_text(tokens); }

  int translated_count() const {
    int n = 0;
    for (std::uint8_t bit : mask) n += bit;
    return n;
  }
};

struct GenerationPolicy {
  enum class Mode { all, max_cmi, top_k };

  Mode mode = Mode::all;
  int k = 1;                 // meaningful for top_k
  bool clause_only = false;  // translate only independent-clause segments

  /// Accepts "all", "max-cmi", or "top-k=<positive integer>".
  static GenerationPolicy parse(const std::string& text) {
    GenerationPolicy policy;
    if (text == "all") {
      policy.mode = Mode::all;
      return policy;
    }
    if (text == "max-cmi") {
      policy.mode = Mode::max_cmi;
      return policy;
    }
    const std::string prefix = "top-k=";
    if (text.rfind(prefix, 0) == 0) {
      policy.mode = Mode::top_k;
      const std::string num = text.substr(prefix.size());
      try {
        std::size_t used = 0;
        int k = std::stoi(num, &used);
        if (used != num.size() || k < 1) throw std::invalid_argument(num);
        policy.k = k;
      } catch (const std::exception&) {
        throw Error("top-k policy needs a positive integer, got '" + num +
                    "'");
      }
      return policy;
    }
    throw Error("unknown policy '" + text +
                "' (expected all, max-cmi, or top-k=<k>)");
  }
};

/// Builds the variant selected by `mask`: segments with bit 1 are
/// translated to `target` and tagged with translated provenance, segments
/// with bit 0 keep their source tokens tagged as untouched. Scores and
/// the sentence label are filled in.
inline Variant assemble_variant(const Sentence& sentence,
                                const SegmentationResult& seg,
                                const std::vector<std::uint8_t>& mask,
                                TranslationBackend& backend,
                                const Lang& target,
                                const TaggerConfig& config = {}) {
  if (mask.size() != seg.segments.size()) {
    throw Error("mask length " + std::to_string(mask.size()) +
                " does not match segment count " +
                std::to_string(seg.segments.size()));
  }
  Variant variant;
  variant.sentence_id = seg.sentence_id;
  variant.mask = mask;
  variant.label = sentence.label;
  variant.target_code = target.code();

  const Provenance untouched = Provenance::untouched();
  for (std::size_t i = 0; i < seg.segments.size(); ++i) {
    const Segment& segment = seg.segments[i];
    if (mask[i]) {
      TranslationRequest request{segment_text(sentence, segment), Lang::eng(),
                                 target};
      TranslatedSegment translated = translate(backend, request, config);
      variant.tokens.insert(variant.tokens.end(), translated.tokens.begin(),
                            translated.tokens.end());
    } else {
      for (int t = segment.span.lo; t <= segment.span.hi; ++t) {
        const std::string& form = sentence.token(t).form;
        variant.tokens.push_back(
            TokenTag{form, tag_token_language(form, untouched, config)});
      }
    }
  }
  variant.cmi = cmi_utterance(variant.tokens);
  variant.i_index = i_index(variant.tokens);
  return variant;
}

namespace detail {

/// Strictly better under the MaxCmi tie rules: higher CMI, then fewer
/// translated segments, then the smaller mask numeral.
inline bool max_cmi_better(const Variant& a, const Variant& b) {
  if (a.cmi != b.cmi) return a.cmi > b.cmi;
  if (a.translated_count() != b.translated_count()) {
    return a.translated_count() < b.translated_count();
  }
  return a.mask_string() < b.mask_string();
}

}  // namespace detail

/// Enumerates translation masks over the translatable segments (all of
/// them, or only independent clauses under clause_only) in ascending
/// binary-numeral order, assembling and scoring each variant. Mode All
/// returns every variant; MaxCmi reduces to the single best one under the
/// tie rules; TopK also returns every variant, since its selection runs
/// corpus-wide in select_top_k.
inline std::vector<Variant> enumerate_variants(
    const Sentence& sentence, const SegmentationResult& seg,
    TranslationBackend& backend, const GenerationPolicy& policy,
    const Lang& target, const TaggerConfig& config = {}) {
  if (!target.is_native()) {
    throw Error("generation target must be a native language, got '" +
                target.code() + "'");
  }
  std::vector<std::size_t> translatable;
  for (std::size_t i = 0; i < seg.segments.size(); ++i) {
    if (!policy.clause_only || seg.segments[i].is_clause()) {
      translatable.push_back(i);
    }
  }
  const std::size_t k = translatable.size();
  if (k > 32) {
    throw Error("refusing to enumerate 2^" + std::to_string(k) +
                " variants; sentence '" + seg.sentence_id +
                "' has too many translatable segments");
  }

  std::vector<Variant> variants;
  std::optional<Variant> best;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t value = 0; value < total; ++value) {
    std::vector<std::uint8_t> mask(seg.segments.size(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      if ((value >> (k - 1 - j)) & 1u) mask[translatable[j]] = 1;
    }
    Variant variant =
        assemble_variant(sentence, seg, mask, backend, target, config);
    if (policy.mode == GenerationPolicy::Mode::max_cmi) {
      if (!best || detail::max_cmi_better(variant, *best)) {
        best = std::move(variant);
      }
    } else {
      variants.push_back(std::move(variant));
    }
  }
  if (policy.mode == GenerationPolicy::Mode::max_cmi) {
    variants.push_back(std::move(*best));
  }
  return variants;
}

/// Corpus-level Top-K: highest CMI first, ties by i_index descending,
/// then (sentence_id, mask) ascending so reruns pick the same variants.
inline std::vector<Variant> select_top_k(std::vector<Variant> variants,
                                         int k) {
  if (k < 1) throw Error("top-k selection needs k >= 1");
  std::sort(variants.begin(), variants.end(),
            [](const Variant& a, const Variant& b) {
              if (a.cmi != b.cmi) return a.cmi > b.cmi;
              if (a.i_index != b.i_index) return a.i_index > b.i_index;
              if (a.sentence_id != b.sentence_id) {
                return a.sentence_id < b.sentence_id;
              }
              return a.mask_string() < b.mask_string();
            });
  if (variants.size() > static_cast<std::size_t>(k)) {
    variants.resize(static_cast<std::size_t>(k));
  }
  return variants;
}

}  // namespace codemix
