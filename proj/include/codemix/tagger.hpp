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

#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codemix/lang.hpp"
#include "codemix/tags.hpp"
#include "codemix/text.hpp"
#include "codemix/translation.hpp"

namespace codemix {

/// Where a token came from: an untouched source segment, or the output of
/// a translation into `target`. Romanized backends write native text in
/// Latin letters, so for them script cannot separate native words from
/// English passthroughs; the case-folded source forms of the request are
/// carried along to spot passthroughs by identity instead.
struct Provenance {
  enum class Kind { untouched, translated };

  Kind kind = Kind::untouched;
  Lang target = Lang::eng();
  bool romanized = false;
  std::set<std::string> source_forms;  // case-folded, romanized mode only

  static Provenance untouched() { return Provenance{}; }

  static Provenance translated(Lang target, bool romanized = false,
                               std::set<std::string> source_forms = {}) {
    Provenance p;
    p.kind = Kind::translated;
    p.target = std::move(target);
    p.romanized = romanized;
    p.source_forms = std::move(source_forms);
    return p;
  }

  static Provenance translated_from(const TranslationRequest& request,
                                    bool romanized) {
    std::set<std::string> forms;
    if (romanized) {
      for (const std::string& w : split_whitespace(request.text)) {
        forms.insert(to_lower(w));
      }
    }
    return translated(request.target, romanized, std::move(forms));
  }
};

/// Tagging knobs: the other-lexicon lists forms that are language
/// independent regardless of provenance (proper nouns, URLs, ...).
struct TaggerConfig {
  std::set<std::string> other_forms;  // case-folded

  bool is_other_form(const std::string& form) const {
    return other_forms.count(to_lower(form)) > 0;
  }

  /// One form per line; `#` comments and blank lines are skipped.
  static TaggerConfig from_stream(std::istream& in) {
    TaggerConfig config;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string form = normalize_spaces(line);
      if (form.empty() || form[0] == '#') continue;
      config.other_forms.insert(to_lower(form));
    }
    return config;
  }

  static TaggerConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open other-lexicon file '" + path + "'");
    return from_stream(in);
  }
};

/// Assigns a language tag to one token form. Rules, in order:
///  1. punctuation-only or digit-only forms, and forms listed in the
///     other-lexicon, are language independent -> other;
///  2. forms dominated by a native script belong to that script's
///     language -- the declared target when it matches the script, else
///     the script's default language;
///  3. Latin-script forms inside a translated segment are English
///     passthroughs when the backend writes native script (any Latin
///     form), or, for romanized backends, when the form is one of the
///     request's own source tokens -> eng;
///  4. otherwise the token speaks the segment's language: eng for
///     untouched segments, the declared target for translated ones.
inline Lang tag_token_language(const std::string& form,
                               const Provenance& provenance,
                               const TaggerConfig& config = {}) {
  if (is_punct_only(form) || is_digit_only(form) ||
      config.is_other_form(form)) {
    return Lang::other();
  }

  const Script script = dominant_script(form);
  if (script == Script::devanagari || script == Script::kannada) {
    if (provenance.kind == Provenance::Kind::translated &&
        provenance.target.is_native() &&
        script_of_lang(provenance.target) == script) {
      return provenance.target;
    }
    return default_lang_for_script(script);
  }

  if (provenance.kind == Provenance::Kind::translated &&
      script == Script::latin) {
    if (!provenance.romanized) return Lang::eng();
    if (provenance.source_forms.count(to_lower(form))) return Lang::eng();
  }

  return provenance.kind == Provenance::Kind::translated ? provenance.target
                                                         : Lang::eng();
}

/// A translated segment: the backend's output split into tagged tokens.
struct TranslatedSegment {
  std::vector<TokenTag> tokens;
  std::string origin_text;   // the request's source text
  std::string backend_name;
};

/// Translates one segment and tags every output token. The backend's
/// output is taken verbatim and whitespace-split; tags follow
/// tag_token_language with translated provenance. A backend emitting no
/// tokens for a non-empty request falls back to passing the source
/// through untouched, keeping the at-least-one-token guarantee.
inline TranslatedSegment translate(TranslationBackend& backend,
                                   const TranslationRequest& request,
                                   const TaggerConfig& config = {}) {
  validate_request(request);
  TranslatedSegment segment;
  segment.origin_text = request.text;
  segment.backend_name = backend.name();

  const std::string raw = backend.translate_text(request);
  const Provenance provenance =
      Provenance::translated_from(request, backend.romanized_output());
  for (const std::string& form : split_whitespace(raw)) {
    segment.tokens.push_back(
        TokenTag{form, tag_token_language(form, provenance, config)});
  }
  if (segment.tokens.empty()) {
    const Provenance untouched = Provenance::untouched();
    for (const std::string& form : split_whitespace(request.text)) {
      segment.tokens.push_back(
          TokenTag{form, tag_token_language(form, untouched, config)});
    }
  }
  return segment;
}

}  // namespace codemix
