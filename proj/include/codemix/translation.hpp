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

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "codemix/errors.hpp"
#include "codemix/lang.hpp"
#include "codemix/text.hpp"

namespace codemix {

struct TranslationRequest {
  std::string text;
  Lang source = Lang::eng();
  Lang target = Lang::eng();
};

/// Throws when the request violates its invariants (empty text or
/// source == target).
inline void validate_request(const TranslationRequest& request) {
  if (request.text.empty()) {
    throw Error("translation request has empty text");
  }
  if (request.source == request.target) {
    throw Error("translation request has source == target ('" +
                request.source.code() + "')");
  }
}

/// Contract for anything that can turn an English segment into native
/// text. Implementations must be safe for concurrent translate_text calls.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  virtual std::string name() const = 0;

  /// Raw translated surface for the request's text.
  virtual std::string translate_text(const TranslationRequest& request) = 0;

  /// True when this backend writes native text in Latin letters
  /// (romanized); such output is language-tagged by declared target, since
  /// script gives no signal.
  virtual bool romanized_output() const { return false; }
};

/// Phrase table mapping case-folded, space-normalized English phrases to
/// native phrases. The deterministic stand-in for an online translator.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon from_entries(
      const std::vector<std::pair<std::string, std::string>>& pairs) {
    Lexicon lex;
    for (const auto& [phrase, native] : pairs) lex.add(phrase, native);
    return lex;
  }

  /// Reads `english_phrase<TAB>native_phrase` lines; `#` comments and
  /// blank lines are skipped.
  static Lexicon from_stream(std::istream& in) {
    Lexicon lex;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw ParseError(ParseError::Kind::malformed_line,
                         "lexicon line " + std::to_string(line_no) +
                             ": expected english<TAB>native");
      }
      try {
        lex.add(line.substr(0, tab), line.substr(tab + 1));
      } catch (const Error& e) {
        throw ParseError(ParseError::Kind::malformed_line,
                         "lexicon line " + std::to_string(line_no) + ": " +
                             e.what());
      }
    }
    return lex;
  }

  static Lexicon from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon file '" + path + "'");
    return from_stream(in);
  }

  void add(const std::string& phrase, const std::string& native) {
    std::string key = to_lower(normalize_spaces(phrase));
    if (key.empty()) throw Error("empty lexicon key");
    if (native.empty()) throw Error("empty lexicon value for '" + key + "'");
    if (!entries_.emplace(key, native).second) {
      throw Error("duplicate lexicon key '" + key + "'");
    }
    std::size_t words = split_whitespace(key).size();
    if (words > max_phrase_len_) max_phrase_len_ = words;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t max_phrase_len() const { return max_phrase_len_; }

  const std::string* lookup(const std::string& phrase) const {
    auto it = entries_.find(to_lower(normalize_spaces(phrase)));
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// Greedy longest-match left-to-right phrase replacement over the
  /// case-folded tokens of `text`; unmatched tokens pass through with
  /// their original casing.
  std::string translate(const std::string& text) const {
    std::vector<std::string> words = split_whitespace(text);
    if (words.empty()) return "";
    std::vector<std::string> folded;
    folded.reserve(words.size());
    for (const std::string& w : words) folded.push_back(to_lower(w));

    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < words.size()) {
      const std::string* replacement = nullptr;
      std::size_t matched = 0;
      std::size_t window = std::min(max_phrase_len_, words.size() - i);
      for (std::size_t len = window; len >= 1; --len) {
        std::string key = folded[i];
        for (std::size_t j = 1; j < len; ++j) {
          key += ' ';
          key += folded[i + j];
        }
        auto it = entries_.find(key);
        if (it != entries_.end()) {
          replacement = &it->second;
          matched = len;
          break;
        }
      }
      if (replacement) {
        out.push_back(*replacement);
        i += matched;
      } else {
        out.push_back(words[i]);
        ++i;
      }
    }
    return join(out, " ");
  }

 private:
  std::unordered_map<std::string, std::string> entries_;
  std::size_t max_phrase_len_ = 1;
};

/// Offline backend over a phrase table. Source must be English; the
/// target must be a native language. Emits romanized output (the phrase
/// tables used in tests hold Latin-script native text).
class LexiconBackend : public TranslationBackend {
 public:
  explicit LexiconBackend(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

  std::string name() const override { return "lexicon"; }

  std::string translate_text(const TranslationRequest& request) override {
    if (!request.source.is_eng()) {
      throw UnsupportedPair("lexicon backend translates from eng only, got '" +
                            request.source.code() + "'");
    }
    if (!request.target.is_native()) {
      throw UnsupportedPair("lexicon backend needs a native target, got '" +
                            request.target.code() + "'");
    }
    return lexicon_.translate(request.text);
  }

  bool romanized_output() const override { return true; }

  const Lexicon& lexicon() const { return lexicon_; }

 private:
  Lexicon lexicon_;
};

/// Single-file append-safe key-value log.
///
/// Layout: 8-byte magic, then entries of
///   [u64 key hash][u32 key len][u32 value len][key][value][u64 checksum]
/// with little-endian integers and an fnv1a64 checksum over key+value
/// bytes. Entries failing their checksum (or truncated) are skipped on
/// load — a miss with a warning — so a torn final write never poisons
/// the store; later duplicates of a key win.
class CacheStore {
 public:
  static constexpr std::string_view kMagic = "CMXCACH1";

  explicit CacheStore(std::string path) : path_(std::move(path)) {
    load();
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw Error("cannot open cache store '" + path_ + "'");
    if (fresh_) {
      out_.write(kMagic.data(),
                 static_cast<std::streamsize>(kMagic.size()));
      out_.flush();
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, const std::string& value) {
    append_entry(key, value);
    map_[key] = value;
  }

  std::size_t size() const { return map_.size(); }
  int corrupt_entries() const { return corrupt_; }
  const std::string& path() const { return path_; }

 private:
  static void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
  }
  static void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
  }
  static std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i]))
           << (8 * i);
    }
    return v;
  }
  static std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i]))
           << (8 * i);
    }
    return v;
  }

  void load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
      fresh_ = true;
      return;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string data = buf.str();
    if (data.empty()) {
      fresh_ = true;
      return;
    }
    if (data.size() < kMagic.size() ||
        std::string_view(data).substr(0, kMagic.size()) != kMagic) {
      throw Error("'" + path_ + "' is not a cache store (bad magic)");
    }
    std::size_t pos = kMagic.size();
    const std::size_t header = 8 + 4 + 4;
    while (pos < data.size()) {
      if (data.size() - pos < header) {
        ++corrupt_;  // truncated header at the tail
        break;
      }
      std::uint32_t klen = get_u32(data.data() + pos + 8);
      std::uint32_t vlen = get_u32(data.data() + pos + 12);
      std::size_t body = static_cast<std::size_t>(klen) + vlen + 8;
      if (data.size() - pos - header < body) {
        ++corrupt_;  // truncated payload at the tail
        break;
      }
      const char* key_p = data.data() + pos + header;
      const char* val_p = key_p + klen;
      std::uint64_t want = get_u64(val_p + vlen);
      std::uint64_t have =
          fnv1a64(std::string_view(key_p, klen + std::size_t{vlen}));
      if (have != want) {
        ++corrupt_;  // damaged entry; skip it (lookup will miss)
      } else {
        map_[std::string(key_p, klen)] = std::string(val_p, vlen);
      }
      pos += header + body;
    }
  }

  void append_entry(const std::string& key, const std::string& value) {
    std::string entry;
    entry.reserve(24 + key.size() + value.size());
    put_u64(entry, fnv1a64(key));
    put_u32(entry, static_cast<std::uint32_t>(key.size()));
    put_u32(entry, static_cast<std::uint32_t>(value.size()));
    entry += key;
    entry += value;
    put_u64(entry, fnv1a64(key + value));
    out_.write(entry.data(), static_cast<std::streamsize>(entry.size()));
    out_.flush();
    if (!out_) throw Error("cannot append to cache store '" + path_ + "'");
  }

  std::string path_;
  std::unordered_map<std::string, std::string> map_;
  std::ofstream out_;
  int corrupt_ = 0;
  bool fresh_ = false;
};

inline std::string cache_key(const TranslationRequest& request) {
  std::string key = request.source.code();
  key += '\x1f';
  key += request.target.code();
  key += '\x1f';
  key += request.text;
  return key;
}

/// Wraps a backend with a persistent cache keyed by (source, target,
/// text). Hits skip the inner backend entirely; misses delegate and then
/// persist the answer. Safe for concurrent use: lookups share a lock,
/// inserts take it exclusively, and the inner backend is called without
/// holding it.
class CachedBackend : public TranslationBackend {
 public:
  CachedBackend(std::shared_ptr<TranslationBackend> inner,
                std::shared_ptr<CacheStore> store)
      : inner_(std::move(inner)), store_(std::move(store)) {}

  std::string name() const override { return inner_->name(); }

  bool romanized_output() const override {
    return inner_->romanized_output();
  }

  std::string translate_text(const TranslationRequest& request) override {
    const std::string key = cache_key(request);
    {
      std::shared_lock lock(mutex_);
      if (auto hit = store_->get(key)) return *hit;
    }
    std::string value = inner_->translate_text(request);
    {
      std::unique_lock lock(mutex_);
      if (auto hit = store_->get(key)) return *hit;  // racer persisted it
      store_->put(key, value);
    }
    return value;
  }

 private:
  std::shared_ptr<TranslationBackend> inner_;
  std::shared_ptr<CacheStore> store_;
  std::shared_mutex mutex_;
};

inline std::shared_ptr<TranslationBackend> cached(
    std::shared_ptr<TranslationBackend> backend,
    std::shared_ptr<CacheStore> store) {
  return std::make_shared<CachedBackend>(std::move(backend), std::move(store));
}

}  // namespace codemix
