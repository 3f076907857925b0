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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codemix/conllu.hpp"
#include "codemix/errors.hpp"

namespace codemix {

/// Inclusive 1-based token range.
struct Span {
  int lo = 0;
  int hi = 0;

  int length() const { return hi - lo + 1; }
  bool contains(int index) const { return index >= lo && index <= hi; }
  bool operator==(const Span& other) const {
    return lo == other.lo && hi == other.hi;
  }
  bool operator!=(const Span& other) const { return !(*this == other); }
};

/// Strips a `:subtype` suffix: "nsubj:pass" -> "nsubj".
inline std::string_view base_relation(std::string_view deprel) {
  std::size_t colon = deprel.find(':');
  return colon == std::string_view::npos ? deprel : deprel.substr(0, colon);
}

/// True when `deprel` names the wanted relation. Matching is on the base
/// relation, and the two direct-object spellings ("obj" from UD, "dobj"
/// from Stanford-style trees) count as the same relation.
inline bool relation_is(std::string_view deprel, std::string_view wanted) {
  std::string_view base = base_relation(deprel);
  if (base == wanted) return true;
  if ((wanted == "obj" || wanted == "dobj") &&
      (base == "obj" || base == "dobj")) {
    return true;
  }
  return false;
}

/// Navigable view of one sentence's dependency tree. Owns a copy of the
/// sentence, so a graph stays valid independently of the corpus it came
/// from. The constructor assumes the sentence already passed the parser's
/// tree validation.
class DepGraph {
 public:
  explicit DepGraph(Sentence sentence)
      : sentence_(std::move(sentence)),
        children_(static_cast<std::size_t>(sentence_.size()) + 1) {
    for (const Token& t : sentence_.tokens) {
      children_[static_cast<std::size_t>(t.head)].push_back(t.index);
    }
    // Heads were visited in token order, so each list is already sorted.
  }

  const Sentence& sentence() const { return sentence_; }
  int size() const { return sentence_.size(); }

  const Token& token(int index) const { return sentence_.token(index); }

  int head_of(int index) const { return token(index).head; }

  const std::string& relation_of(int index) const {
    return token(index).deprel;
  }

  int root() const {
    const auto& top = children_[0];
    return top.empty() ? 0 : top.front();
  }

  /// Direct dependents of `index` in ascending token order. Index 0 lists
  /// the root(s).
  const std::vector<int>& children_of(int index) const {
    if (index < 0 || index > size()) throw NodeOutOfRange(index, size());
    return children_[static_cast<std::size_t>(index)];
  }

  /// First direct dependent of `head` whose relation matches `wanted`,
  /// or 0 when none does.
  int child_with_relation(int head, std::string_view wanted) const {
    for (int c : children_of(head)) {
      if (relation_is(relation_of(c), wanted)) return c;
    }
    return 0;
  }

  /// All token indices in the subtree rooted at `index` (inclusive),
  /// in ascending order.
  std::vector<int> subtree(int index) const {
    if (index < 1 || index > size()) throw NodeOutOfRange(index, size());
    std::vector<int> nodes;
    std::vector<int> stack{index};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      nodes.push_back(node);
      for (int c : children_[static_cast<std::size_t>(node)]) {
        stack.push_back(c);
      }
    }
    std::sort(nodes.begin(), nodes.end());
    return nodes;
  }

  /// Extent of the subtree rooted at `index`: smallest and largest token
  /// index it touches, plus its node count.
  struct SubtreeStats {
    int lo = 0;
    int hi = 0;
    int count = 0;
  };

  SubtreeStats subtree_stats(int index) const {
    if (index < 1 || index > size()) throw NodeOutOfRange(index, size());
    SubtreeStats stats{index, index, 0};
    std::vector<int> stack{index};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      ++stats.count;
      stats.lo = std::min(stats.lo, node);
      stats.hi = std::max(stats.hi, node);
      for (int c : children_[static_cast<std::size_t>(node)]) {
        stack.push_back(c);
      }
    }
    return stats;
  }

  Span subtree_span(int index) const {
    SubtreeStats stats = subtree_stats(index);
    return Span{stats.lo, stats.hi};
  }

  /// A subtree is contiguous exactly when it fills its own extent: the
  /// number of nodes equals hi - lo + 1.
  bool is_contiguous_subtree(int index) const {
    SubtreeStats stats = subtree_stats(index);
    return stats.count == stats.hi - stats.lo + 1;
  }

 private:
  Sentence sentence_;
  std::vector<std::vector<int>> children_;
};

}  // namespace codemix
