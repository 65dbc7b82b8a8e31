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
#include <nlohmann/json.hpp>

#include <string>

#include "scorerag/pipeline.hpp"

namespace scorerag::service {

inline int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::OutOfRange:
      return 400;
    case ErrorKind::EmptyCorpus:
    case ErrorKind::EmptyIndex:
      return 503;
    case ErrorKind::Timeout:
      return 504;
    case ErrorKind::BackendUnreachable:
    case ErrorKind::BackendRefused:
    case ErrorKind::GenerationBackendError:
      return 502;
    default:
      return 500;
  }
}

/// Process exit codes for the CLI: 2 data, 3 config or input, 4 backend,
/// 5 evaluation, 1 anything else.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyCorpus:
    case ErrorKind::EmptyIndex:
    case ErrorKind::CorruptIndexFile:
    case ErrorKind::NotFound:
    case ErrorKind::DuplicateId:
    case ErrorKind::DuplicateChunkId:
    case ErrorKind::EmptyAfterCleaning:
    case ErrorKind::Io:
      return 2;
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidInput:
    case ErrorKind::OutOfRange:
      return 3;
    case ErrorKind::BackendUnreachable:
    case ErrorKind::BackendRefused:
    case ErrorKind::Timeout:
    case ErrorKind::GenerationBackendError:
    case ErrorKind::DimensionMismatch:
      return 4;
    case ErrorKind::MismatchedIds:
    case ErrorKind::UnparseableScores:
      return 5;
    default:
      return 1;
  }
}

inline nlohmann::ordered_json error_json(const Error& e) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = to_string(e.kind());
  j["error"]["message"] = e.detail();
  if (const auto* s = dynamic_cast<const pipeline::StageError*>(&e)) {
    j["error"]["stage"] = s->stage();
    j["partial"] = s->partial();
  }
  return j;
}

/// JSON API over an engine:
///   POST /api/generate  {"query": ..., "k"?: int, "threshold"?: number}
///   GET  /api/health
///   GET  /api/config    effective config with secrets redacted
class Server {
 public:
  explicit Server(const pipeline::Engine& engine) : engine_(engine) {
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
    server_.Post("/api/generate", [this](const httplib::Request& req, httplib::Response& res) { generate(req, res); });
    server_.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      nlohmann::ordered_json j;
      j["status"] = "ok";
      j["articles"] = engine_.store().size();
      j["chunks"] = engine_.index().size();
      j["embedding"] = engine_.embedder_name();
      j["llm"] = engine_.llm_name();
      j["prompt_version"] = prompts::kVersion;
      send(res, 200, j);
    });
    server_.Get("/api/config", [this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, config::to_redacted_json(engine_.config()));
    });
  }

  /// Binds host:port; port 0 picks a free one. Returns the bound port.
  int bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) fail(ErrorKind::Io, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
  }

  /// Serves until stop() is called.
  void listen() { server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  static void send(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }

  void generate(const httplib::Request& req, httplib::Response& res) const {
    try {
      const auto body = nlohmann::json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) fail(ErrorKind::InvalidInput, "request body must be a JSON object");
      if (!body.contains("query") || !body["query"].is_string()) {
        fail(ErrorKind::InvalidInput, "\"query\" must be a string");
      }
      const auto overrides = pipeline::overrides_from_json(body);
      send(res, 200, pipeline::to_json(engine_.run(body["query"].get<std::string>(), overrides)));
    } catch (const Error& e) {
      send(res, http_status(e.kind()), error_json(e));
    } catch (const std::exception& e) {
      send(res, 500, {{"error", {{"kind", "Internal"}, {"message", e.what()}}}});
    }
  }

  const pipeline::Engine& engine_;
  httplib::Server server_;
};

}  // namespace scorerag::service
