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
#include <string_view>

#include "codemix/errors.hpp"
#include "codemix/text.hpp"

namespace codemix {

/// Language identity of a token or of a translation endpoint.
///
/// Three classes: "eng" (the foreign/source language), a native language
/// code ("hin", "kan", "mar", extensible), and "other" for
/// language-independent tokens (digits, punctuation, configured proper
/// nouns). Stored as the plain code so it serializes as-is.
class Lang {
 public:
  Lang() : code_("eng") {}

  static Lang eng() { return Lang("eng"); }
  static Lang other() { return Lang("other"); }

  static Lang native(std::string_view code) {
    if (code.empty() || code == "eng" || code == "other") {
      throw Error("invalid native language code: '" + std::string(code) + "'");
    }
    return Lang(std::string(code));
  }

  /// "eng" and "other" map to their classes; anything else is native.
  static Lang from_code(std::string_view code) {
    if (code == "eng") return eng();
    if (code == "other") return other();
    return native(code);
  }

  const std::string& code() const { return code_; }
  bool is_eng() const { return code_ == "eng"; }
  bool is_other() const { return code_ == "other"; }
  bool is_native() const { return !is_eng() && !is_other(); }

  friend bool operator==(const Lang& a, const Lang& b) {
    return a.code_ == b.code_;
  }
  friend bool operator!=(const Lang& a, const Lang& b) { return !(a == b); }
  friend bool operator<(const Lang& a, const Lang& b) {
    return a.code_ < b.code_;
  }

 private:
  explicit Lang(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

/// Writing system a native language is expected to use.
inline Script script_of_lang(const Lang& lang) {
  const std::string& c = lang.code();
  if (c == "hin" || c == "mar") return Script::devanagari;
  if (c == "kan") return Script::kannada;
  return Script::other;
}

/// Default language attributed to bare native-script text.
inline Lang default_lang_for_script(Script script) {
  switch (script) {
    case Script::devanagari: return Lang::native("hin");
    case Script::kannada: return Lang::native("kan");
    default: return Lang::eng();
  }
}

}  // namespace codemix
