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

#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/errors.hpp"
#include "codemix/text.hpp"

namespace codemix {

/// One dependency-annotated token. All ten CoNLL-U columns are retained so
/// that serialization round-trips token lines byte for byte; only FORM,
/// UPOS, HEAD and DEPREL carry semantics here.
struct Token {
  int index = 0;                 // 1-based position
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;                  // 0 = root
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
  std::optional<std::string> label;
  std::optional<std::string> raw_text;
  int skipped_multiword = 0;     // range-id lines seen in the source block
  int skipped_empty_nodes = 0;   // decimal-id lines seen in the source block

  int size() const { return static_cast<int>(tokens.size()); }

  const Token& token(int index) const {
    if (index < 1 || index > size()) throw NodeOutOfRange(index, size());
    return tokens[static_cast<std::size_t>(index - 1)];
  }

  int root_index() const {
    for (const Token& t : tokens) {
      if (t.head == 0) return t.index;
    }
    return 0;
  }

  /// Token forms joined by single spaces.
  std::string joined_forms() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out += ' ';
      out += tokens[i].form;
    }
    return out;
  }

  /// Original surface when the source carried one, otherwise joined forms.
  std::string surface() const { return raw_text ? *raw_text : joined_forms(); }
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string source_name;
};

namespace detail {

inline std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

/// Validates the structural invariants of a finished block and reports
/// failures with the block's identity in the message.
inline void validate_sentence(const Sentence& sent, const std::string& where) {
  const int n = sent.size();
  for (int i = 0; i < n; ++i) {
    const Token& t = sent.tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1) {
      throw ParseError(ParseError::Kind::malformed_line,
                       where + ": token ids are not contiguous 1.." +
                           std::to_string(n) + " (saw id " +
                           std::to_string(t.index) + " at position " +
                           std::to_string(i + 1) + ")");
    }
    if (t.head < 0 || t.head > n) {
      throw ParseError(ParseError::Kind::bad_head,
                       where + ": token " + std::to_string(t.index) +
                           " has head " + std::to_string(t.head) +
                           " out of range 0.." + std::to_string(n));
    }
    if (t.head == t.index) {
      throw ParseError(ParseError::Kind::bad_head,
                       where + ": token " + std::to_string(t.index) +
                           " is its own head");
    }
  }
  int roots = 0;
  for (const Token& t : sent.tokens) roots += (t.head == 0);
  if (roots > 1) {
    throw ParseError(ParseError::Kind::multiple_roots,
                     where + ": " + std::to_string(roots) + " root tokens");
  }
  if (roots == 0) {
    throw ParseError(ParseError::Kind::cycle_detected,
                     where + ": no root token (head arcs form a cycle)");
  }
  // Walk each parent chain; a chain longer than n tokens cannot be a tree.
  std::vector<int> color(static_cast<std::size_t>(n) + 1, 0);
  for (int start = 1; start <= n; ++start) {
    if (color[static_cast<std::size_t>(start)] != 0) continue;
    int node = start;
    std::vector<int> path;
    while (node != 0 && color[static_cast<std::size_t>(node)] == 0) {
      color[static_cast<std::size_t>(node)] = 1;
      path.push_back(node);
      node = sent.tokens[static_cast<std::size_t>(node - 1)].head;
    }
    if (node != 0 && color[static_cast<std::size_t>(node)] == 1) {
      throw ParseError(ParseError::Kind::cycle_detected,
                       where + ": head arcs form a cycle through token " +
                           std::to_string(node));
    }
    for (int v : path) color[static_cast<std::size_t>(v)] = 2;
  }
}

}  // namespace detail

/// Parses a CoNLL-U stream into a corpus.
///
/// Blocks are separated by blank lines; `# sent_id` and `# text` comments
/// populate the sentence id and raw text. Multiword-token lines (range ids)
/// and empty-node lines (decimal ids) are skipped for the graph but counted
/// on the sentence. Sentences without `# sent_id` get "s<ordinal>".
inline Corpus parse_conllu(std::istream& in, std::string source_name = "") {
  Corpus corpus;
  corpus.source_name = std::move(source_name);

  Sentence current;
  bool block_open = false;
  int line_no = 0;
  int block_first_line = 0;
  std::set<std::string> seen_ids;

  auto block_name = [&]() {
    std::string name = current.id.empty()
                           ? "sentence " +
                                 std::to_string(corpus.sentences.size() + 1)
                           : "sentence '" + current.id + "'";
    return name + " (line " + std::to_string(block_first_line) + ")";
  };

  auto finalize_block = [&]() {
    if (!block_open) return;
    if (current.tokens.empty()) {
      // Comment-only block; nothing to keep.
      current = Sentence{};
      block_open = false;
      return;
    }
    if (current.id.empty()) {
      current.id = "s" + std::to_string(corpus.sentences.size() + 1);
    }
    detail::validate_sentence(current, block_name());
    if (!seen_ids.insert(current.id).second) {
      throw ParseError(ParseError::Kind::malformed_line,
                       block_name() + ": duplicate sent_id");
    }
    corpus.sentences.push_back(std::move(current));
    current = Sentence{};
    block_open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    // Lines holding only whitespace separate blocks just like empty ones;
    // stray trailing spaces on separator lines are common in hand-edited
    // files and carry no content.
    if (line.find_first_not_of(" \t") == std::string::npos) {
      finalize_block();
      continue;
    }
    if (!block_open) {
      block_open = true;
      block_first_line = line_no;
    }

    if (line[0] == '#') {
      std::string_view rest(line);
      rest.remove_prefix(1);
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      if (rest.rfind("sent_id", 0) == 0) {
        std::size_t eq = rest.find('=');
        if (eq != std::string_view::npos) {
          current.id = normalize_spaces(rest.substr(eq + 1));
        }
      } else if (rest.rfind("text", 0) == 0 &&
                 (rest.size() == 4 || rest[4] == ' ' || rest[4] == '=')) {
        std::size_t eq = rest.find('=');
        if (eq != std::string_view::npos) {
          std::string_view value = rest.substr(eq + 1);
          while (!value.empty() && value.front() == ' ')
            value.remove_prefix(1);
          current.raw_text = std::string(value);
        }
      }
      continue;
    }

    auto cols = detail::split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError(ParseError::Kind::malformed_line,
                       "line " + std::to_string(line_no) + ": expected 10 " +
                           "tab-separated columns, got " +
                           std::to_string(cols.size()));
    }

    std::string_view id_col = cols[0];
    if (id_col.find('-') != std::string_view::npos) {
      ++current.skipped_multiword;
      continue;
    }
    if (id_col.find('.') != std::string_view::npos) {
      ++current.skipped_empty_nodes;
      continue;
    }

    Token tok;
    auto idx = detail::parse_int(id_col);
    if (!idx || *idx < 1) {
      throw ParseError(ParseError::Kind::malformed_line,
                       "line " + std::to_string(line_no) + ": bad token id '" +
                           std::string(id_col) + "'");
    }
    tok.index = *idx;
    tok.form = std::string(cols[1]);
    if (tok.form.empty()) {
      throw ParseError(ParseError::Kind::malformed_line,
                       "line " + std::to_string(line_no) + ": empty FORM");
    }
    tok.lemma = std::string(cols[2]);
    tok.upos = std::string(cols[3]);
    tok.xpos = std::string(cols[4]);
    tok.feats = std::string(cols[5]);
    auto head = detail::parse_int(cols[6]);
    if (!head || *head < 0) {
      throw ParseError(ParseError::Kind::bad_head,
                       "line " + std::to_string(line_no) + ": HEAD '" +
                           std::string(cols[6]) + "' is not a non-negative " +
                           "integer");
    }
    tok.head = *head;
    tok.deprel = std::string(cols[7]);
    tok.deps = std::string(cols[8]);
    tok.misc = std::string(cols[9]);
    current.tokens.push_back(std::move(tok));
  }
  finalize_block();

  if (corpus.sentences.empty()) {
    throw ParseError(ParseError::Kind::empty_input,
                     "no sentences found in input" +
                         (corpus.source_name.empty()
                              ? std::string()
                              : " '" + corpus.source_name + "'"));
  }
  return corpus;
}

inline Corpus parse_conllu_text(std::string_view text,
                                std::string source_name = "") {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, std::move(source_name));
}

inline void serialize_conllu(const Sentence& sent, std::ostream& out) {
  out << "# sent_id = " << sent.id << '\n';
  if (sent.raw_text) out << "# text = " << *sent.raw_text << '\n';
  for (const Token& t : sent.tokens) {
    out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos
        << '\t' << t.xpos << '\t' << t.feats << '\t' << t.head << '\t'
        << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
  }
  out << '\n';
}

inline void serialize_conllu(const Corpus& corpus, std::ostream& out) {
  for (const Sentence& s : corpus.sentences) serialize_conllu(s, out);
}

/// Reads a `sent_id<TAB>label` sidecar. `#` comments and blank lines are
/// allowed; anything else without exactly one tab is an error.
inline std::map<std::string, std::string> load_labels(std::istream& in) {
  std::map<std::string, std::string> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError(ParseError::Kind::malformed_line,
                       "label sidecar line " + std::to_string(line_no) +
                           ": expected sent_id<TAB>label");
    }
    labels[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return labels;
}

/// Joins sidecar labels onto sentences by id; unmatched ids stay unlabeled.
/// Returns the number of sentences that received a label.
inline std::size_t apply_labels(
    Corpus& corpus, const std::map<std::string, std::string>& labels) {
  std::size_t applied = 0;
  for (Sentence& s : corpus.sentences) {
    auto it = labels.find(s.id);
    if (it != labels.end()) {
      s.label = it->second;
      ++applied;
    }
  }
  return applied;
}

}  // namespace codemix
