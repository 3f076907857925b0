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

// codemix: turn dependency-parsed English (CoNLL-U) into code-switched
// English/native corpora.
//
//   codemix segment   --input corpus.conllu --out segments.jsonl
//   codemix generate  --input corpus.conllu --lexicon phrases.tsv
//                     --target hin --policy all --out corpus.jsonl
//   codemix clean     --input tweets.txt --out cleaned.txt
//   codemix stats     --input corpus.jsonl --table
//
// Exit codes: 0 success, 2 input/parse/config errors, 3 backend errors.

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "codemix/clean.hpp"
#include "codemix/conllu.hpp"
#include "codemix/corpus_stats.hpp"
#include "codemix/dep_graph.hpp"
#include "codemix/generator.hpp"
#include "codemix/http_backend.hpp"
#include "codemix/report.hpp"
#include "codemix/segmenter.hpp"
#include "codemix/tagger.hpp"
#include "codemix/translation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBackend = 3;

struct SegmentOptions {
  std::string input;
  std::string out;
  int workers = 1;
};

struct GenerateOptions {
  std::string input;
  std::string labels;
  std::string lexicon;
  bool use_mt = false;
  bool mt_romanized = false;
  std::string cache;
  std::string target;
  std::string policy = "all";
  bool clause_only = false;
  std::string other_lexicon;
  std::string out;
  int workers = 1;
};

struct CleanOptions {
  std::string input;
  std::string out;
};

struct StatsOptions {
  std::string input;
  std::string out;
  bool table = false;
};

/// Runs fn(0..count-1) on a small thread pool. Results must go into
/// pre-sized slots, so output order never depends on scheduling. The
/// first exception wins and is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!stop.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(workers),
                                        count);
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

codemix::Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw codemix::Error("cannot open input file '" + path + "'");
  return codemix::parse_conllu(in, path);
}

/// Writes the fully assembled payload in one go — an input that fails to
/// parse never leaves a partial output file behind.
void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw codemix::Error("cannot open output file '" + out_path + "'");
  out << payload;
  if (!out) throw codemix::Error("cannot write output file '" + out_path + "'");
}

int run_segment(const SegmentOptions& opts) {
  codemix::Corpus corpus = load_corpus(opts.input);
  const std::size_t count = corpus.sentences.size();

  std::vector<codemix::ordered_json> records(count);
  std::vector<std::size_t> diagnostic_counts(count, 0);
  std::vector<std::size_t> segment_counts(count, 0);
  parallel_for(count, opts.workers, [&](std::size_t i) {
    const codemix::Sentence& sentence = corpus.sentences[i];
    codemix::DepGraph graph(sentence);
    codemix::SegmentationResult result = codemix::extract_segments(graph);
    diagnostic_counts[i] = result.diagnostics.size();
    segment_counts[i] = result.segments.size();
    records[i] = codemix::segmentation_record(sentence, result);
  });

  std::string payload;
  std::size_t segments = 0;
  std::size_t diagnostics = 0;
  for (std::size_t i = 0; i < count; ++i) {
    payload += records[i].dump();
    payload += '\n';
    segments += segment_counts[i];
    diagnostics += diagnostic_counts[i];
  }
  write_output(opts.out, payload);
  std::cerr << "segmented " << count << " sentence(s) into " << segments
            << " segment(s); " << diagnostics << " diagnostic(s)\n";
  return kExitOk;
}

std::shared_ptr<codemix::TranslationBackend> make_backend(
    const GenerateOptions& opts) {
  const bool have_lexicon = !opts.lexicon.empty();
  if (have_lexicon == opts.use_mt) {
    throw codemix::Error(
        "select exactly one translation backend: --lexicon <file> or --mt");
  }
  std::shared_ptr<codemix::TranslationBackend> backend;
  if (have_lexicon) {
    backend = std::make_shared<codemix::LexiconBackend>(
        codemix::Lexicon::from_file(opts.lexicon));
  } else {
    codemix::HttpBackendConfig config = codemix::HttpBackendConfig::from_env();
    config.romanized = opts.mt_romanized;
    backend = std::make_shared<codemix::HttpBackend>(config);
  }
  if (!opts.cache.empty()) {
    backend = codemix::cached(
        backend, std::make_shared<codemix::CacheStore>(opts.cache));
  }
  return backend;
}

int run_generate(const GenerateOptions& opts) {
  codemix::Corpus corpus = load_corpus(opts.input);
  if (!opts.labels.empty()) {
    std::ifstream in(opts.labels);
    if (!in) {
      throw codemix::Error("cannot open labels file '" + opts.labels + "'");
    }
    codemix::apply_labels(corpus, codemix::load_labels(in));
  }

  std::shared_ptr<codemix::TranslationBackend> backend = make_backend(opts);
  codemix::TaggerConfig tagger;
  if (!opts.other_lexicon.empty()) {
    tagger = codemix::TaggerConfig::from_file(opts.other_lexicon);
  }
  codemix::GenerationPolicy policy =
      codemix::GenerationPolicy::parse(opts.policy);
  policy.clause_only = opts.clause_only;
  if (opts.target.empty()) {
    throw codemix::Error("generate needs --target {hin|kan|mar}");
  }
  const codemix::Lang target = codemix::Lang::native(opts.target);

  const std::size_t count = corpus.sentences.size();
  std::vector<std::vector<codemix::Variant>> per_sentence(count);
  parallel_for(count, opts.workers, [&](std::size_t i) {
    const codemix::Sentence& sentence = corpus.sentences[i];
    codemix::DepGraph graph(sentence);
    codemix::SegmentationResult seg = codemix::extract_segments(graph);
    per_sentence[i] =
        codemix::enumerate_variants(sentence, seg, *backend, policy, target,
                                    tagger);
  });

  std::vector<codemix::Variant> variants;
  for (std::vector<codemix::Variant>& batch : per_sentence) {
    for (codemix::Variant& v : batch) variants.push_back(std::move(v));
  }
  if (policy.mode == codemix::GenerationPolicy::Mode::top_k) {
    variants = codemix::select_top_k(std::move(variants), policy.k);
    // Re-emit in input order (then mask) so reruns diff cleanly.
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < count; ++i) {
      position[corpus.sentences[i].id] = i;
    }
    std::sort(variants.begin(), variants.end(),
              [&](const codemix::Variant& a, const codemix::Variant& b) {
                std::size_t pa = position[a.sentence_id];
                std::size_t pb = position[b.sentence_id];
                if (pa != pb) return pa < pb;
                return a.mask_string() < b.mask_string();
              });
  }

  std::string payload;
  for (const codemix::Variant& v : variants) {
    payload += codemix::variant_record(v).dump();
    payload += '\n';
  }
  write_output(opts.out, payload);
  std::cerr << "generated " << variants.size() << " variant(s) from " << count
            << " sentence(s)\n";
  return kExitOk;
}

int run_clean(const CleanOptions& opts) {
  std::ifstream in(opts.input);
  if (!in) {
    throw codemix::Error("cannot open input file '" + opts.input + "'");
  }
  std::ostringstream buffer;
  codemix::CleanStats stats = codemix::clean_stream(in, buffer);
  write_output(opts.out, buffer.str());
  std::cerr << "cleaned " << stats.lines_in << " line(s): kept "
            << stats.lines_kept << ", dropped " << stats.lines_dropped
            << "\n";
  return kExitOk;
}

int run_stats(const StatsOptions& opts) {
  std::ifstream in(opts.input);
  if (!in) {
    throw codemix::Error("cannot open input file '" + opts.input + "'");
  }
  std::vector<codemix::Variant> variants = codemix::read_variants_jsonl(in);
  codemix::CorpusStats stats = codemix::corpus_stats(variants);
  std::string payload = opts.table
                            ? codemix::stats_table(stats)
                            : codemix::stats_json(stats).dump(2) + "\n";
  write_output(opts.out, payload);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "codemix: synthesize code-switched English/native corpora from "
      "dependency-parsed English"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "codemix 0.1.0");
  app.set_config("--config", "",
                 "Read options from an INI-style config file (keys mirror "
                 "the long flags, grouped in [segment]/[generate]/... "
                 "sections)");

  SegmentOptions seg_opts;
  CLI::App* seg = app.add_subcommand(
      "segment", "Extract independent clauses and adjuncts to JSONL");
  seg->add_option("--input", seg_opts.input, "CoNLL-U input file")
      ->required();
  seg->add_option("--out", seg_opts.out, "Output path (default: stdout)");
  seg->add_option("--workers", seg_opts.workers, "Worker thread count")
      ->check(CLI::PositiveNumber);

  GenerateOptions gen_opts;
  CLI::App* gen = app.add_subcommand(
      "generate", "Enumerate and score code-switched variants to JSONL");
  gen->add_option("--input", gen_opts.input, "CoNLL-U input file")
      ->required();
  gen->add_option("--labels", gen_opts.labels,
                  "Sentence label sidecar (sent_id<TAB>label)");
  gen->add_option("--lexicon", gen_opts.lexicon,
                  "Phrase-table backend: TSV english<TAB>native");
  gen->add_flag("--mt", gen_opts.use_mt,
                "HTTP MT backend at CODEMIX_MT_URL (key: CODEMIX_MT_KEY)");
  gen->add_flag("--mt-romanized", gen_opts.mt_romanized,
                "Declare that the MT endpoint emits romanized (Latin-script) "
                "native text");
  gen->add_option("--cache", gen_opts.cache,
                  "Persistent translation cache file");
  gen->add_option("--target", gen_opts.target, "Native target language")
      ->check(CLI::IsMember({"hin", "kan", "mar"}))
      ->required();
  gen->add_option("--policy", gen_opts.policy,
                  "Variant selection: all, max-cmi, or top-k=<k>");
  gen->add_flag("--clause-only", gen_opts.clause_only,
                "Translate only independent-clause segments");
  gen->add_option("--other-lexicon", gen_opts.other_lexicon,
                  "Forms to tag as language independent, one per line");
  gen->add_option("--out", gen_opts.out, "Output path (default: stdout)");
  gen->add_option("--workers", gen_opts.workers, "Worker thread count")
      ->check(CLI::PositiveNumber);

  CleanOptions clean_opts;
  CLI::App* clean = app.add_subcommand(
      "clean", "Strip mentions, URLs, and hashtags from raw utterances");
  clean->add_option("--input", clean_opts.input, "Plain-text input file")
      ->required();
  clean->add_option("--out", clean_opts.out, "Output path (default: stdout)");

  StatsOptions stats_opts;
  CLI::App* stats = app.add_subcommand(
      "stats", "Corpus statistics for a generated JSONL corpus");
  stats->add_option("--input", stats_opts.input, "Generated JSONL file")
      ->required();
  stats->add_flag("--table", stats_opts.table,
                  "Render a plain-text table instead of JSON");
  stats->add_option("--out", stats_opts.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (seg->parsed()) return run_segment(seg_opts);
    if (gen->parsed()) return run_generate(gen_opts);
    if (clean->parsed()) return run_clean(clean_opts);
    if (stats->parsed()) return run_stats(stats_opts);
    std::cerr << "no subcommand selected\n";
    return kExitParse;
  } catch (const codemix::BackendUnavailable& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const codemix::UnsupportedPair& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const codemix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
