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

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "codemix/conllu.hpp"
#include "codemix/corpus_stats.hpp"
#include "codemix/generator.hpp"
#include "codemix/metrics.hpp"
#include "codemix/segmenter.hpp"

namespace codemix {

using ordered_json = nlohmann::ordered_json;

/// One segmentation JSONL record. `text` is the tokenized surface (forms
/// joined by spaces) that the 1-based lo/hi indices refer to.
inline ordered_json segmentation_record(const Sentence& sentence,
                                        const SegmentationResult& result) {
  ordered_json record;
  record["id"] = result.sentence_id;
  record["text"] = sentence.joined_forms();
  record["segments"] = ordered_json::array();
  for (const Segment& segment : result.segments) {
    ordered_json s;
    s["lo"] = segment.span.lo;
    s["hi"] = segment.span.hi;
    s["kind"] = segment_kind_name(segment.kind);
    if (segment.case_kind) {
      s["case"] = case_kind_name(*segment.case_kind);
    } else {
      s["case"] = nullptr;
    }
    record["segments"].push_back(std::move(s));
  }
  record["diagnostics"] = result.diagnostics;
  return record;
}

/// One generated-corpus JSONL record.
inline ordered_json variant_record(const Variant& variant) {
  ordered_json record;
  record["id"] = variant.sentence_id;
  record["mask"] = variant.mask_string();
  record["target"] = variant.target_code;
  record["tokens"] = ordered_json::array();
  for (const TokenTag& token : variant.tokens) {
    record["tokens"].push_back(
        ordered_json{{"form", token.form}, {"lang", token.lang.code()}});
  }
  record["text"] = variant.text();
  record["cmi"] = variant.cmi;
  record["i_index"] = variant.i_index;
  if (variant.label) {
    record["label"] = *variant.label;
  } else {
    record["label"] = nullptr;
  }
  return record;
}

/// Reads a generated corpus (or any token-tagged corpus) back from JSONL.
/// Requires `id` and a non-empty `tokens` array of {form, lang} per line;
/// `mask`, `target`, and `label` are optional. The metrics are recomputed
/// from the tags rather than trusted from the file, so downstream
/// statistics always agree with the token annotations.
inline std::vector<Variant> read_variants_jsonl(std::istream& in) {
  std::vector<Variant> variants;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "JSONL line " + std::to_string(line_no);

    ordered_json record =
        ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      throw ParseError(ParseError::Kind::malformed_line,
                       where + ": not a JSON object");
    }
    if (!record.contains("id") || !record["id"].is_string()) {
      throw ParseError(ParseError::Kind::malformed_line,
                       where + ": missing string field 'id'");
    }
    if (!record.contains("tokens") || !record["tokens"].is_array() ||
        record["tokens"].empty()) {
      throw ParseError(ParseError::Kind::malformed_line,
                       where + ": missing non-empty array field 'tokens'");
    }

    Variant variant;
    variant.sentence_id = record["id"].get<std::string>();
    for (const auto& t : record["tokens"]) {
      if (!t.is_object() || !t.contains("form") || !t["form"].is_string() ||
          !t.contains("lang") || !t["lang"].is_string()) {
        throw ParseError(ParseError::Kind::malformed_line,
                         where + ": token needs string 'form' and 'lang'");
      }
      std::string form = t["form"].get<std::string>();
      std::string code = t["lang"].get<std::string>();
      if (form.empty() || code.empty()) {
        throw ParseError(ParseError::Kind::malformed_line,
                         where + ": empty token form or lang");
      }
      variant.tokens.push_back(TokenTag{form, Lang::from_code(code)});
    }
    if (record.contains("mask") && record["mask"].is_string()) {
      for (char c : record["mask"].get<std::string>()) {
        if (c != '0' && c != '1') {
          throw ParseError(ParseError::Kind::malformed_line,
                           where + ": mask must be a string of 0s and 1s");
        }
        variant.mask.push_back(c == '1');
      }
    }
    if (record.contains("target") && record["target"].is_string()) {
      variant.target_code = record["target"].get<std::string>();
    }
    if (record.contains("label") && record["label"].is_string()) {
      variant.label = record["label"].get<std::string>();
    }
    variant.cmi = cmi_utterance(variant.tokens);
    variant.i_index = i_index(variant.tokens);
    variants.push_back(std::move(variant));
  }
  return variants;
}

inline ordered_json stats_json(const CorpusStats& stats) {
  ordered_json vocab;
  for (const auto& [code, size] : stats.vocab_by_language) {
    vocab[code] = size;
  }
  vocab["other"] = stats.other_vocab;
  vocab["total"] = stats.total_vocab();

  return ordered_json{
      {"total_variants", stats.total_variants},
      {"unique_utterances", stats.total_unique},
      {"average_length", stats.average_length},
      {"c_avg", stats.c_avg},
      {"mean_i_index", stats.mean_i_index},
      {"vocabulary", std::move(vocab)},
      {"utterances",
       ordered_json{{"codeswitched", stats.codeswitched},
                    {"english_only", stats.english_only},
                    {"native_only", stats.native_only},
                    {"other_only", stats.other_only}}},
  };
}

/// Plain-text rendering with one metric per row, using the conventional
/// corpus-report row names.
inline std::string stats_table(const CorpusStats& stats) {
  std::ostringstream out;
  auto row = [&out](const std::string& name, const std::string& value) {
    out << std::left << std::setw(30) << name << value << '\n';
  };
  auto num = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v;
    return s.str();
  };

  row("Number of Unique Utterances", std::to_string(stats.total_unique));
  row("Total Generated Variants", std::to_string(stats.total_variants));
  row("Average Length", num(stats.average_length));
  row("Total Vocabulary Size", std::to_string(stats.total_vocab()));
  auto eng = stats.vocab_by_language.find("eng");
  row("English Vocabulary Size",
      std::to_string(eng == stats.vocab_by_language.end() ? 0 : eng->second));
  row("Native Vocabulary Size", std::to_string(stats.native_vocab()));
  row("Others Vocabulary Size", std::to_string(stats.other_vocab));
  row("Codeswitched Utterances", std::to_string(stats.codeswitched));
  row("English Utterances", std::to_string(stats.english_only));
  row("Native Utterances", std::to_string(stats.native_only));
  row("Other Utterances", std::to_string(stats.other_only));
  row("Cavg", num(stats.c_avg));
  row("Iindex", num(stats.mean_i_index));
  return out.str();
}

}  // namespace codemix
