/*
 * Copyright 2026 The ScoreRAG Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "scorerag/error.hpp"
#include "scorerag/log.hpp"

namespace scorerag::http {

/// "http://host:port/base" split into the origin httplib wants and a path
/// prefix that request paths are appended to.
struct Endpoint {
  std::string origin;
  std::string base_path;

  std::string path(std::string_view suffix) const {
    std::string p = base_path + std::string(suffix);
    return p.empty() ? "/" : p;
  }
};

inline Endpoint parse_endpoint(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    fail(ErrorKind::InvalidConfig, "endpoint url must start with http:// or https://: " + std::string(url));
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    fail(ErrorKind::InvalidConfig, "unsupported url scheme: " + std::string(url));
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") fail(ErrorKind::InvalidConfig, "https endpoints need a TLS-enabled build");
#endif
  const auto host_begin = scheme_end + 3;
  const auto slash = url.find('/', host_begin);
  Endpoint e;
  e.origin = std::string(url.substr(0, slash));
  if (e.origin.size() == host_begin) fail(ErrorKind::InvalidConfig, "endpoint url has no host: " + std::string(url));
  if (slash != std::string_view::npos) e.base_path = std::string(url.substr(slash));
  while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
  return e;
}

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

struct Response {
  int status = 0;
  std::string body;
};

inline std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

/// POSTs a JSON body, retrying transport failures, 429 and 5xx replies with
/// exponential backoff. Other non-2xx replies fail immediately with
/// BackendRefused. Exhausted retries raise Timeout when the last failure was
/// a timeout and BackendUnreachable otherwise.
inline Response post_json(const Endpoint& endpoint, const std::string& path, const std::string& body,
                          const httplib::Headers& headers, std::chrono::milliseconds timeout,
                          const RetryPolicy& retry, std::string_view what) {
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  auto backoff = retry.initial_backoff;
  std::string last_failure;
  bool last_was_timeout = false;
  std::optional<Response> last_refusal;
  const int attempts = std::max(1, retry.attempts);

  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(path, headers, body, "application/json");
    const auto elapsed = std::chrono::steady_clock::now() - started;

    if (res) {
      Response r{res->status, res->body};
      if (r.status >= 200 && r.status < 300) return r;
      if (r.status != 429 && r.status < 500) {
        fail(ErrorKind::BackendRefused,
             std::string(what) + " returned HTTP " + std::to_string(r.status) + ": " + r.body.substr(0, 500));
      }
      last_refusal = r;
      last_was_timeout = false;
      last_failure = "HTTP " + std::to_string(r.status);
    } else {
      const auto err = res.error();
      last_was_timeout = err == httplib::Error::ConnectionTimeout ||
                         ((err == httplib::Error::Read || err == httplib::Error::Write) && elapsed >= timeout);
      last_refusal.reset();
      last_failure = httplib::to_string(err);
    }
    log::warn(std::string(what) + " attempt " + std::to_string(attempt) + "/" + std::to_string(attempts) +
              " failed: " + last_failure);
    if (attempt < attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * retry.multiplier));
    }
  }
  if (last_refusal) {
    fail(ErrorKind::BackendRefused, std::string(what) + " returned HTTP " + std::to_string(last_refusal->status) +
                                        " after " + std::to_string(attempts) + " attempts: " +
                                        last_refusal->body.substr(0, 500));
  }
  fail(last_was_timeout ? ErrorKind::Timeout : ErrorKind::BackendUnreachable,
       std::string(what) + " at " + endpoint.origin + " failed after " + std::to_string(attempts) +
           " attempts: " + last_failure);
}

}  // namespace scorerag::http
