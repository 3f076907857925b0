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
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "codemix/errors.hpp"
#include "codemix/translation.hpp"

namespace codemix {

struct HttpBackendConfig {
  std::string url;      // full endpoint, e.g. http://mt.example.com/translate
  std::string api_key;  // optional; sent as a bearer token when non-empty
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds deadline{30'000};  // per request, retries included
  bool romanized = false;  // endpoint emits Latin-script native text

  /// Endpoint and key from CODEMIX_MT_URL / CODEMIX_MT_KEY.
  static HttpBackendConfig from_env() {
    HttpBackendConfig config;
    if (const char* url = std::getenv("CODEMIX_MT_URL")) config.url = url;
    if (const char* key = std::getenv("CODEMIX_MT_KEY")) config.api_key = key;
    return config;
  }
};

/// Machine-translation client: POSTs {"q","source","target"} to the
/// configured endpoint and reads {"translatedText"} back. Transient
/// failures (connection errors, non-2xx statuses) are retried with
/// exponential backoff up to max_attempts within the deadline, then
/// surface as BackendUnavailable. A fresh connection is used per call,
/// so concurrent requests are safe.
class HttpBackend : public TranslationBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config)
      : config_(std::move(config)) {
    if (config_.url.empty()) {
      throw Error("MT endpoint URL is empty (set CODEMIX_MT_URL)");
    }
    std::size_t scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error("MT endpoint URL '" + config_.url +
                  "' must start with http:// or https://");
    }
    std::string scheme = config_.url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
      throw Error("MT endpoint URL scheme '" + scheme + "' is not supported");
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") {
      throw Error("this build lacks TLS support; use an http:// endpoint");
    }
#endif
    std::size_t path_start = config_.url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_ = config_.url;
      path_ = "/";
    } else {
      base_ = config_.url.substr(0, path_start);
      path_ = config_.url.substr(path_start);
    }
  }

  std::string name() const override { return "mt-http"; }

  bool romanized_output() const override { return config_.romanized; }

  std::string translate_text(const TranslationRequest& request) override {
    nlohmann::json body{{"q", request.text},
                        {"source", request.source.code()},
                        {"target", request.target.code()}};
    const std::string payload = body.dump();

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
    };

    std::string last_error = "no attempt made";
    int attempts = 0;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
      if (attempt > 1) {
        auto backoff = config_.initial_backoff * (1 << (attempt - 2));
        if (elapsed() + backoff >= config_.deadline) break;
        std::this_thread::sleep_for(backoff);
      }
      auto remaining = config_.deadline - elapsed();
      if (remaining <= std::chrono::milliseconds::zero()) break;
      ++attempts;

      httplib::Client client(base_);
      auto cap = [&](std::chrono::milliseconds limit) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
            std::min<std::chrono::milliseconds>(limit, remaining));
      };
      client.set_connection_timeout(cap(std::chrono::milliseconds(5'000)));
      client.set_read_timeout(cap(std::chrono::milliseconds(10'000)));
      client.set_write_timeout(cap(std::chrono::milliseconds(10'000)));
      httplib::Headers headers;
      if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
      }

      httplib::Result res =
          client.Post(path_, headers, payload, "application/json");
      if (!res) {
        last_error = "connection error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "HTTP status " + std::to_string(res->status);
        continue;
      }
      nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr,
                                                    /*allow_exceptions=*/false);
      if (parsed.is_discarded() || !parsed.contains("translatedText") ||
          !parsed["translatedText"].is_string()) {
        // A malformed body is a contract violation, not a transient fault.
        throw BackendUnavailable("MT endpoint '" + config_.url +
                                 "' returned a response without a " +
                                 "'translatedText' string");
      }
      return parsed["translatedText"].get<std::string>();
    }
    throw BackendUnavailable("MT endpoint '" + config_.url + "' failed after " +
                             std::to_string(attempts) + " attempt(s): " +
                             last_error);
  }

 private:
  HttpBackendConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;  // request path, "/" when the URL has none
};

}  // namespace codemix
