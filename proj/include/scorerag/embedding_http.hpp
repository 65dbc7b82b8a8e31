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

#include <nlohmann/json.hpp>

#include <chrono>
#include <string>
#include <vector>

#include "scorerag/embedding.hpp"
#include "scorerag/http_util.hpp"

namespace scorerag::embedding {

inline constexpr const char* kEmbeddingTokenEnv = "SCORERAG_EMBEDDING_TOKEN";

/// Client for an embedding server speaking
///   POST <endpoint>  {"model": ..., "texts": [...]}  ->  {"vectors": [[...], ...]}
class HttpBackend final : public EmbeddingBackend {
 public:
  explicit HttpBackend(BackendConfig config, http::RetryPolicy retry = {})
      : config_(std::move(config)), endpoint_(http::parse_endpoint(config_.endpoint_url)), retry_(retry) {
    validate(config_);
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    nlohmann::json body = {{"model", config_.model_name}, {"texts", texts}};
    if (config_.device_hint) body["device"] = *config_.device_hint;
    httplib::Headers headers;
    if (auto token = http::env(kEmbeddingTokenEnv)) headers.emplace("Authorization", "Bearer " + *token);

    const auto timeout = std::chrono::milliseconds(static_cast<long long>(config_.timeout_secs * 1000.0));
    const auto res = http::post_json(endpoint_, endpoint_.path(""), body.dump(), headers, timeout, retry_,
                                     "embedding backend");
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res.body);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::BackendRefused, std::string("embedding backend sent invalid JSON: ") + e.what());
    }
    if (!reply.contains("vectors") || !reply["vectors"].is_array()) {
      fail(ErrorKind::BackendRefused, "embedding backend reply has no \"vectors\" array");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(reply["vectors"].size());
    for (const auto& row : reply["vectors"]) {
      if (!row.is_array()) fail(ErrorKind::BackendRefused, "embedding backend vector is not an array");
      std::vector<double> values;
      values.reserve(row.size());
      for (const auto& x : row) {
        if (!x.is_number()) fail(ErrorKind::BackendRefused, "embedding backend vector has a non-numeric entry");
        values.push_back(x.get<double>());
      }
      out.emplace_back(std::move(values));
    }
    return out;
  }

  std::string name() const override { return "http embedding backend"; }

 private:
  BackendConfig config_;
  http::Endpoint endpoint_;
  http::RetryPolicy retry_;
};

}  // namespace scorerag::embedding
