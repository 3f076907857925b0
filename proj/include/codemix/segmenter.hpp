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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codemix/dep_graph.hpp"

namespace codemix {

/// A verb-ish head together with its leftmost subject and/or object
/// dependent. At least one of the two dependents is present.
struct ClauseAnchor {
  int head = 0;
  std::optional<int> subject;  // leftmost nsubj child
  std::optional<int> object;   // leftmost dobj/obj child

  bool operator==(const ClauseAnchor& other) const {
    return head == other.head && subject == other.subject &&
           object == other.object;
  }
};

/// The four orderings of (subject, head, object) that license a clause.
enum class CaseKind {
  case1,  // subject < head < object, both dependents present
  case2,  // object absent, subject < head
  case3,  // subject present, head < subject
  case4,  // subject absent, head < object
};

inline const char* case_kind_name(CaseKind kind) {
  switch (kind) {
    case CaseKind::case1: return "case1";
    case CaseKind::case2: return "case2";
    case CaseKind::case3: return "case3";
    case CaseKind::case4: return "case4";
  }
  return "case?";
}

enum class SegmentKind { independent_clause, adjunct };

inline const char* segment_kind_name(SegmentKind kind) {
  return kind == SegmentKind::independent_clause ? "clause" : "adjunct";
}

struct Segment {
  Span span;
  SegmentKind kind = SegmentKind::adjunct;
  std::optional<ClauseAnchor> anchor;    // present iff independent clause
  std::optional<CaseKind> case_kind;     // present iff independent clause

  bool is_clause() const { return kind == SegmentKind::independent_clause; }
};

struct SegmentationResult {
  std::string sentence_id;
  std::vector<Segment> segments;
  std::vector<std::string> diagnostics;

  bool has_clause() const {
    for (const Segment& s : segments) {
      if (s.is_clause()) return true;
    }
    return false;
  }
};

struct SegmenterConfig {
  /// Relations that extend a Case-2 clause rightward past the head when the
  /// dependent's subtree starts at or after the head.
  std::set<std::string> case2_extension_rels{"amod", "advmod", "acomp",
                                             "attr"};
};

/// One anchor per head that governs an nsubj and/or a direct object; the
/// leftmost dependent wins when a head has several of one relation.
/// Anchors come back ordered by head index.
inline std::vector<ClauseAnchor> find_anchors(const DepGraph& graph) {
  std::vector<ClauseAnchor> anchors;
  for (int head = 1; head <= graph.size(); ++head) {
    ClauseAnchor anchor;
    anchor.head = head;
    // children_of() is ascending, so the first match is the leftmost.
    for (int child : graph.children_of(head)) {
      const std::string& rel = graph.relation_of(child);
      if (!anchor.subject && relation_is(rel, "nsubj")) {
        anchor.subject = child;
      } else if (!anchor.object && relation_is(rel, "dobj")) {
        anchor.object = child;
      }
    }
    if (anchor.subject || anchor.object) anchors.push_back(anchor);
  }
  return anchors;
}

/// Orders the anchor into one of the four cases, or nullopt when no case
/// matches (e.g. an object left of its head); callers drop those anchors
/// with a diagnostic.
inline std::optional<CaseKind> classify_case(const ClauseAnchor& anchor) {
  const bool has_subj = anchor.subject.has_value();
  const bool has_obj = anchor.object.has_value();
  if (has_subj && has_obj && *anchor.subject < anchor.head &&
      anchor.head < *anchor.object) {
    return CaseKind::case1;
  }
  if (has_subj && !has_obj && *anchor.subject < anchor.head) {
    return CaseKind::case2;
  }
  if (has_subj && anchor.head < *anchor.subject) {
    return CaseKind::case3;
  }
  if (!has_subj && has_obj && anchor.head < *anchor.object) {
    return CaseKind::case4;
  }
  return std::nullopt;
}

/// Span produced for one classified anchor.
struct ClauseSpan {
  Span span;
  bool whole_sentence_fallback = false;  // a consulted subtree had a gap
  bool cop_extended = false;             // copular right-edge rule applied
};

/// Computes the clause span for a classified anchor.
///
/// Case 1 starts at the subject noun phrase and ends at the object.
/// Case 2 starts at the subject noun phrase and ends at the head, extended
/// rightward over adjectival/adverbial dependents and, for copular heads,
/// to the head's subtree right edge. Case 3 starts at the head's leftmost
/// preceding dependent and ends at the subject phrase. Case 4 starts at
/// the head (or its leftmost preceding dependent) and ends at the object
/// phrase. Any consulted subtree with a gap in its yield forces a
/// whole-sentence fallback span, reported via the flag.
inline ClauseSpan clause_span(const DepGraph& graph,
                              const ClauseAnchor& anchor, CaseKind kind,
                              const SegmenterConfig& config = {}) {
  const int n = graph.size();
  auto fallback = [&]() {
    ClauseSpan out;
    out.span = Span{1, n};
    out.whole_sentence_fallback = true;
    return out;
  };

  ClauseSpan out;
  switch (kind) {
    case CaseKind::case1: {
      if (!graph.is_contiguous_subtree(*anchor.subject)) return fallback();
      out.span = Span{graph.subtree_span(*anchor.subject).lo, *anchor.object};
      break;
    }
    case CaseKind::case2: {
      if (!graph.is_contiguous_subtree(*anchor.subject)) return fallback();
      int lo = graph.subtree_span(*anchor.subject).lo;
      int hi = anchor.head;
      bool has_cop = false;
      for (int child : graph.children_of(anchor.head)) {
        const std::string& rel = graph.relation_of(child);
        if (relation_is(rel, "cop")) has_cop = true;
        if (config.case2_extension_rels.count(
                std::string(base_relation(rel))) == 0) {
          continue;
        }
        Span child_span = graph.subtree_span(child);
        if (child_span.lo < anchor.head) continue;  // precedes the head
        if (!graph.is_contiguous_subtree(child)) return fallback();
        hi = std::max(hi, child_span.hi);
      }
      if (has_cop) {
        if (!graph.is_contiguous_subtree(anchor.head)) return fallback();
        hi = std::max(hi, graph.subtree_span(anchor.head).hi);
        out.cop_extended = true;
      }
      out.span = Span{lo, hi};
      break;
    }
    case CaseKind::case3: {
      if (!graph.is_contiguous_subtree(*anchor.subject)) return fallback();
      int lo = anchor.head;
      for (int child : graph.children_of(anchor.head)) {
        lo = std::min(lo, child);
      }
      int hi = std::max(anchor.head, graph.subtree_span(*anchor.subject).hi);
      // A case-3 anchor may still govern an object (classification only
      // requires head < subject). The clause must contain every anchor
      // token, so a trailing object extends the right edge.
      if (anchor.object) hi = std::max(hi, *anchor.object);
      out.span = Span{lo, hi};
      break;
    }
    case CaseKind::case4: {
      if (!graph.is_contiguous_subtree(*anchor.object)) return fallback();
      int lo = anchor.head;
      for (int child : graph.children_of(anchor.head)) {
        if (child < anchor.head) lo = std::min(lo, child);
      }
      int hi = graph.subtree_span(*anchor.object).hi;
      out.span = Span{lo, hi};
      break;
    }
  }
  return out;
}

namespace detail {

inline bool is_punct_token(const Token& t) { return t.upos == "PUNCT"; }

}  // namespace detail

/// Partitions the sentence into independent-clause and adjunct segments.
///
/// Clause spans are computed for every classifiable anchor; overlapping
/// spans are resolved by keeping the earlier-starting one (the longer on
/// ties) and dropping the rest with a diagnostic. Uncovered token runs
/// become adjuncts. Punctuation at a segment start migrates to the
/// preceding segment, and a punctuation-only first segment merges into
/// its successor.
inline SegmentationResult extract_segments(const DepGraph& graph,
                                           const SegmenterConfig& config = {}) {
  SegmentationResult result;
  result.sentence_id = graph.sentence().id;
  const int n = graph.size();
  if (n == 0) return result;

  // 1. Collect classified anchors and their spans.
  struct Candidate {
    ClauseAnchor anchor;
    CaseKind kind;
    ClauseSpan clause;
  };
  std::vector<Candidate> candidates;
  for (const ClauseAnchor& anchor : find_anchors(graph)) {
    std::optional<CaseKind> kind = classify_case(anchor);
    if (!kind) {
      std::string diag =
          "anchor at token " + std::to_string(anchor.head) + " (";
      diag += "subject=" +
              (anchor.subject ? std::to_string(*anchor.subject)
                              : std::string("none"));
      diag += ", object=" + (anchor.object ? std::to_string(*anchor.object)
                                           : std::string("none"));
      diag += ") matches no case ordering; dropped";
      result.diagnostics.push_back(std::move(diag));
      continue;
    }
    Candidate c{anchor, *kind, clause_span(graph, anchor, *kind, config)};
    if (c.clause.whole_sentence_fallback) {
      result.diagnostics.push_back(
          "non-contiguous yield at head " + std::to_string(anchor.head) +
          "; falling back to a whole-sentence segment");
    }
    if (c.clause.cop_extended) {
      result.diagnostics.push_back("copular extension applied at head " +
                                   std::to_string(anchor.head));
    }
    candidates.push_back(std::move(c));
  }

  // 2. Resolve overlaps: earlier start wins; on equal starts the longer
  // span wins; stable order keeps the earlier anchor on full ties.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.clause.span.lo != b.clause.span.lo) {
                       return a.clause.span.lo < b.clause.span.lo;
                     }
                     return a.clause.span.length() > b.clause.span.length();
                   });
  std::vector<Candidate> kept;
  for (Candidate& c : candidates) {
    bool overlaps = false;
    for (const Candidate& k : kept) {
      if (c.clause.span.lo <= k.clause.span.hi &&
          k.clause.span.lo <= c.clause.span.hi) {
        overlaps = true;
        result.diagnostics.push_back(
            "clause span [" + std::to_string(c.clause.span.lo) + "," +
            std::to_string(c.clause.span.hi) + "] at head " +
            std::to_string(c.anchor.head) + " overlaps kept span [" +
            std::to_string(k.clause.span.lo) + "," +
            std::to_string(k.clause.span.hi) + "]; dropped");
        break;
      }
    }
    if (!overlaps) kept.push_back(std::move(c));
  }

  // 3. Lay out the partition: kept clauses plus adjunct gap runs.
  std::vector<Segment> segments;
  int cursor = 1;
  for (const Candidate& c : kept) {  // kept is sorted by lo
    if (cursor < c.clause.span.lo) {
      Segment gap;
      gap.span = Span{cursor, c.clause.span.lo - 1};
      gap.kind = SegmentKind::adjunct;
      segments.push_back(gap);
    }
    Segment clause;
    clause.span = c.clause.span;
    clause.kind = SegmentKind::independent_clause;
    clause.anchor = c.anchor;
    clause.case_kind = c.kind;
    segments.push_back(clause);
    cursor = c.clause.span.hi + 1;
  }
  if (cursor <= n) {
    Segment gap;
    gap.span = Span{cursor, n};
    gap.kind = SegmentKind::adjunct;
    segments.push_back(gap);
  }

  // 4. Punctuation at a segment start belongs to the preceding segment.
  for (std::size_t i = 1; i < segments.size();) {
    Segment& prev = segments[i - 1];
    Segment& cur = segments[i];
    while (cur.span.lo <= cur.span.hi &&
           detail::is_punct_token(graph.token(cur.span.lo))) {
      ++prev.span.hi;
      ++cur.span.lo;
    }
    if (cur.span.lo > cur.span.hi) {
      segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  // A punctuation-only first segment attaches to the segment after it.
  while (segments.size() >= 2) {
    const Segment& first = segments.front();
    bool all_punct = true;
    for (int t = first.span.lo; t <= first.span.hi; ++t) {
      if (!detail::is_punct_token(graph.token(t))) {
        all_punct = false;
        break;
      }
    }
    if (!all_punct) break;
    segments[1].span.lo = first.span.lo;
    segments.erase(segments.begin());
  }

  result.segments = std::move(segments);
  return result;
}

/// Surface text of one segment: the covered token forms joined by spaces.
inline std::string segment_text(const Sentence& sentence,
                                const Segment& segment) {
  std::string out;
  for (int i = segment.span.lo; i <= segment.span.hi; ++i) {
    if (i > segment.span.lo) out += ' ';
    out += sentence.token(i).form;
  }
  return out;
}

}  // namespace codemix
