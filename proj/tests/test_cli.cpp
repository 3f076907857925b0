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

// End-to-end tests that drive the installed `codemix` binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "codemix/report.hpp"
#include "codemix/translation.hpp"
#include "test_helpers.hpp"

using codemix::ordered_json;
using testutil::RunResult;
using testutil::TempDir;

namespace {

std::vector<ordered_json> parse_jsonl(const std::string& text) {
  std::vector<ordered_json> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(ordered_json::parse(line));
  }
  return records;
}

std::string fig1() { return testutil::data_file("fig1.conllu").string(); }
std::string fig1_lexicon() {
  return testutil::data_file("fig1_lexicon.tsv").string();
}
std::string fig1_labels() {
  return testutil::data_file("fig1.labels.tsv").string();
}

}  // namespace

TEST_CASE("segment matches the golden records") {
  TempDir dir("cli-segment");
  auto out = dir.file("segments.jsonl");
  RunResult run = testutil::run_cli(
      dir.path(), "segment --input " + fig1() + " --out " + out.string());
  REQUIRE(run.exit_code == 0);
  CHECK(run.err.find("segmented 4 sentence(s)") != std::string::npos);

  auto got = parse_jsonl(testutil::read_file(out));
  auto want = parse_jsonl(
      testutil::read_file(testutil::data_file("fig1_segments.golden.jsonl")));
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i] == want[i]);
  }
}

TEST_CASE("segment output is byte-stable across runs and worker counts") {
  TempDir dir("cli-segdet");
  auto out1 = dir.file("a.jsonl");
  auto out2 = dir.file("b.jsonl");
  auto out4 = dir.file("c.jsonl");
  REQUIRE(testutil::run_cli(dir.path(), "segment --input " + fig1() +
                                            " --out " + out1.string())
              .exit_code == 0);
  REQUIRE(testutil::run_cli(dir.path(), "segment --input " + fig1() +
                                            " --out " + out2.string())
              .exit_code == 0);
  REQUIRE(testutil::run_cli(dir.path(), "segment --input " + fig1() +
                                            " --workers 4 --out " +
                                            out4.string())
              .exit_code == 0);
  const std::string bytes = testutil::read_file(out1);
  CHECK(bytes == testutil::read_file(out2));
  CHECK(bytes == testutil::read_file(out4));
  CHECK(!bytes.empty());
}

TEST_CASE("segment fails fast and leaves no partial output") {
  TempDir dir("cli-segbad");
  auto bad = dir.file("bad.conllu");
  testutil::write_file(bad,
                       "# sent_id = ok\n"
                       "1\tfine\t_\t_\t_\t_\t0\troot\t_\t_\n"
                       "\n"
                       "# sent_id = broken\n"
                       "1\ta\t_\t_\t_\t_\t9\tdet\t_\t_\n");
  auto out = dir.file("segments.jsonl");
  RunResult run = testutil::run_cli(
      dir.path(), "segment --input " + bad.string() + " --out " + out.string());
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("broken") != std::string::npos);  // names the block
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("segment rejects empty input with exit 2") {
  TempDir dir("cli-segempty");
  auto empty = dir.file("empty.conllu");
  testutil::write_file(empty, "");
  auto out = dir.file("segments.jsonl");
  RunResult run = testutil::run_cli(dir.path(), "segment --input " +
                                                    empty.string() + " --out " +
                                                    out.string());
  CHECK(run.exit_code == 2);
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("generate produces labeled, deterministic records") {
  TempDir dir("cli-generate");
  auto out = dir.file("corpus.jsonl");
  const std::string args = "generate --input " + fig1() + " --lexicon " +
                           fig1_lexicon() + " --labels " + fig1_labels() +
                           " --target hin --policy all --out ";
  RunResult run = testutil::run_cli(dir.path(), args + out.string());
  REQUIRE(run.exit_code == 0);
  CHECK(run.err.find("generated 14 variant(s) from 4 sentence(s)") !=
        std::string::npos);

  auto records = parse_jsonl(testutil::read_file(out));
  REQUIRE(records.size() == 14);

  // Records group by sentence in input order, masks ascending.
  std::vector<std::string> ids;
  for (const auto& r : records) ids.push_back(r["id"].get<std::string>());
  std::vector<std::string> want_ids;
  for (int i = 0; i < 4; ++i) want_ids.push_back("fig1-case1");
  for (int i = 0; i < 2; ++i) want_ids.push_back("fig1-case2");
  for (int i = 0; i < 4; ++i) want_ids.push_back("fig1-case3");
  for (int i = 0; i < 4; ++i) want_ids.push_back("fig1-case4");
  CHECK(ids == want_ids);
  CHECK(records[0]["mask"] == "00");
  CHECK(records[3]["mask"] == "11");
  CHECK(records[4]["mask"] == "0");

  // Labels ride along; unlabeled sentences carry null.
  CHECK(records[0]["label"] == "positive");
  CHECK(records[4]["label"].is_null());
  CHECK(records[6]["label"] == "negative");
  CHECK(records[10]["label"].is_null());

  // Byte determinism, including under a worker pool.
  auto out2 = dir.file("corpus2.jsonl");
  auto out4 = dir.file("corpus4.jsonl");
  REQUIRE(testutil::run_cli(dir.path(), args + out2.string()).exit_code == 0);
  REQUIRE(testutil::run_cli(dir.path(),
                            "generate --workers 4 --input " + fig1() +
                                " --lexicon " + fig1_lexicon() + " --labels " +
                                fig1_labels() +
                                " --target hin --policy all --out " +
                                out4.string())
              .exit_code == 0);
  const std::string bytes = testutil::read_file(out);
  CHECK(bytes == testutil::read_file(out2));
  CHECK(bytes == testutil::read_file(out4));
}

TEST_CASE("generate policies select the documented subsets") {
  TempDir dir("cli-policies");

  SUBCASE("max-cmi keeps one best record per sentence") {
    auto out = dir.file("best.jsonl");
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --lexicon " +
                        fig1_lexicon() +
                        " --target hin --policy max-cmi --out " +
                        out.string());
    REQUIRE(run.exit_code == 0);
    auto records = parse_jsonl(testutil::read_file(out));
    REQUIRE(records.size() == 4);
    CHECK(records[0]["id"] == "fig1-case1");
    CHECK(records[0]["mask"] == "10");
    CHECK(records[1]["id"] == "fig1-case2");
    CHECK(records[1]["mask"] == "1");
    CHECK(records[2]["id"] == "fig1-case3");
    CHECK(records[2]["mask"] == "10");
    CHECK(records[3]["id"] == "fig1-case4");
    CHECK(records[3]["mask"] == "10");
  }

  SUBCASE("top-k keeps the k best corpus-wide, re-sorted by input order") {
    auto out = dir.file("top.jsonl");
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --lexicon " +
                        fig1_lexicon() +
                        " --target hin --policy top-k=3 --out " +
                        out.string());
    REQUIRE(run.exit_code == 0);
    auto records = parse_jsonl(testutil::read_file(out));
    REQUIRE(records.size() == 3);
    // Winners by CMI: case4/10 (0.25), then case3/10 and case4/01 (3/14).
    CHECK(records[0]["id"] == "fig1-case3");
    CHECK(records[0]["mask"] == "10");
    CHECK(records[1]["id"] == "fig1-case4");
    CHECK(records[1]["mask"] == "01");
    CHECK(records[2]["id"] == "fig1-case4");
    CHECK(records[2]["mask"] == "10");
  }

  SUBCASE("clause-only halves the mask space") {
    auto out = dir.file("clauses.jsonl");
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --lexicon " +
                        fig1_lexicon() +
                        " --target hin --policy all --clause-only --out " +
                        out.string());
    REQUIRE(run.exit_code == 0);
    auto records = parse_jsonl(testutil::read_file(out));
    // case1: 2 (adjunct pinned), case2: 2, case3: 2, case4: 4.
    CHECK(records.size() == 10);
  }

  SUBCASE("bad policy text is a usage error") {
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --lexicon " +
                        fig1_lexicon() + " --target hin --policy bestest");
    CHECK(run.exit_code == 2);
  }
}

TEST_CASE("generate enforces exactly one backend") {
  TempDir dir("cli-backends");
  SUBCASE("neither") {
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --target hin");
    CHECK(run.exit_code == 2);
    CHECK(run.err.find("exactly one translation backend") !=
          std::string::npos);
  }
  SUBCASE("both") {
    RunResult run = testutil::run_cli(
        dir.path(), "generate --input " + fig1() + " --lexicon " +
                        fig1_lexicon() + " --mt --target hin");
    CHECK(run.exit_code == 2);
  }
}

TEST_CASE("an unreachable MT endpoint exits with the backend code") {
  TempDir dir("cli-mtdead");
  RunResult run = testutil::run_cli(
      dir.path(),
      "generate --input " + fig1() + " --mt --target hin",
      "CODEMIX_MT_URL=http://127.0.0.1:1/translate");
  CHECK(run.exit_code == 3);
  CHECK(run.err.find("backend error") != std::string::npos);
}

TEST_CASE("generate records completed translations in the cache") {
  TempDir dir("cli-cache");
  auto cache = dir.file("mt.cache");
  auto out1 = dir.file("one.jsonl");
  auto out2 = dir.file("two.jsonl");
  const std::string base = "generate --input " + fig1() + " --lexicon " +
                           fig1_lexicon() + " --target hin --cache " +
                           cache.string() + " --out ";
  REQUIRE(testutil::run_cli(dir.path(), base + out1.string()).exit_code == 0);
  REQUIRE(std::filesystem::exists(cache));
  {
    codemix::CacheStore store(cache.string());
    CHECK(store.size() == 7);  // one entry per distinct segment text
    CHECK(store.corrupt_entries() == 0);
  }
  // A warm cache reproduces the exact same corpus.
  REQUIRE(testutil::run_cli(dir.path(), base + out2.string()).exit_code == 0);
  CHECK(testutil::read_file(out1) == testutil::read_file(out2));
}

TEST_CASE("clean strips noise and drops emptied lines") {
  TempDir dir("cli-clean");
  auto in = dir.file("tweets.txt");
  testutil::write_file(in,
                       "loved it @user http://t.co/x #fun\n"
                       "http://only.a.url/\n"
                       "plain text\n");
  auto out = dir.file("clean.txt");
  RunResult run = testutil::run_cli(
      dir.path(), "clean --input " + in.string() + " --out " + out.string());
  REQUIRE(run.exit_code == 0);
  CHECK(testutil::read_file(out) == "loved it\nplain text\n");
  CHECK(run.err.find("cleaned 3 line(s): kept 2, dropped 1") !=
        std::string::npos);
}

TEST_CASE("stats reports a consistent classification partition") {
  TempDir dir("cli-stats");
  auto corpus = dir.file("corpus.jsonl");
  REQUIRE(testutil::run_cli(dir.path(), "generate --input " + fig1() +
                                            " --lexicon " + fig1_lexicon() +
                                            " --target hin --out " +
                                            corpus.string())
              .exit_code == 0);

  SUBCASE("json report") {
    auto out = dir.file("stats.json");
    RunResult run = testutil::run_cli(dir.path(), "stats --input " +
                                                      corpus.string() +
                                                      " --out " + out.string());
    REQUIRE(run.exit_code == 0);
    ordered_json stats = ordered_json::parse(testutil::read_file(out));
    CHECK(stats["total_variants"] == 14);
    CHECK(stats["unique_utterances"] == 14);
    const auto& u = stats["utterances"];
    CHECK(u["codeswitched"] == 8);
    CHECK(u["english_only"] == 4);
    CHECK(u["native_only"] == 2);
    CHECK(u["other_only"] == 0);
    const std::size_t sum = u["codeswitched"].get<std::size_t>() +
                            u["english_only"].get<std::size_t>() +
                            u["native_only"].get<std::size_t>() +
                            u["other_only"].get<std::size_t>();
    CHECK(sum == stats["unique_utterances"].get<std::size_t>());
  }

  SUBCASE("table report") {
    RunResult run =
        testutil::run_cli(dir.path(), "stats --table --input " +
                                          corpus.string());
    REQUIRE(run.exit_code == 0);
    CHECK(run.out.find("Cavg") != std::string::npos);
    CHECK(run.out.find("Number of Unique Utterances") != std::string::npos);
    CHECK(run.out.find("14") != std::string::npos);
  }

  SUBCASE("empty JSONL input is an error") {
    auto empty = dir.file("empty.jsonl");
    testutil::write_file(empty, "");
    RunResult run =
        testutil::run_cli(dir.path(), "stats --input " + empty.string());
    CHECK(run.exit_code == 2);
  }
}

TEST_CASE("options can come from a config file") {
  TempDir dir("cli-config");
  auto out = dir.file("from-config.jsonl");
  auto config = dir.file("run.ini");
  testutil::write_file(config, "[generate]\n"
                               "input=\"" + fig1() + "\"\n"
                               "lexicon=\"" + fig1_lexicon() + "\"\n"
                               "target=hin\n"
                               "policy=max-cmi\n"
                               "out=\"" + out.string() + "\"\n");
  RunResult run = testutil::run_cli(
      dir.path(), "--config " + config.string() + " generate");
  REQUIRE(run.exit_code == 0);
  auto records = parse_jsonl(testutil::read_file(out));
  CHECK(records.size() == 4);
}

TEST_CASE("usage and version plumbing") {
  TempDir dir("cli-usage");
  CHECK(testutil::run_cli(dir.path(), "--help").exit_code == 0);
  RunResult version = testutil::run_cli(dir.path(), "--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("codemix 0.1.0") != std::string::npos);
  // No subcommand and unknown flags are usage errors.
  CHECK(testutil::run_cli(dir.path(), "").exit_code == 2);
  CHECK(testutil::run_cli(dir.path(), "segment --nonsense").exit_code == 2);
  // Target outside the supported set is rejected up front.
  CHECK(testutil::run_cli(dir.path(),
                          "generate --input " + fig1() + " --lexicon " +
                              fig1_lexicon() + " --target deu")
            .exit_code == 2);
}
