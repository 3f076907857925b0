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

#include <stdexcept>
#include <string>

namespace codemix {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// CoNLL-U (and sidecar) ingestion failure. `kind()` lets callers tell the
/// failure modes apart without matching on message text.
class ParseError : public Error {
 public:
  enum class Kind {
    malformed_line,
    bad_head,
    cycle_detected,
    multiple_roots,
    empty_input,
  };

  ParseError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A tree-traversal primitive was asked about a token index outside 1..n.
class NodeOutOfRange : public Error {
 public:
  NodeOutOfRange(int node, int n)
      : Error("node index " + std::to_string(node) + " out of range 1.." +
              std::to_string(n)) {}
};

/// The translation backend could not be reached, after retries.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

/// The backend cannot serve the requested language pair.
class UnsupportedPair : public Error {
 public:
  using Error::Error;
};

/// A corpus-level aggregate was requested over zero utterances.
class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("empty corpus") {}
  using Error::Error;
};

}  // namespace codemix
