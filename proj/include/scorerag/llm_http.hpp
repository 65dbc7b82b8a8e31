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

#include "scorerag/http_util.hpp"
#include "scorerag/llm_gateway.hpp"

namespace scorerag::llm {

inline constexpr const char* kLlmApiKeyEnv = "SCORERAG_LLM_API_KEY";

enum class Dialect { OpenAI, Ollama };

inline Dialect parse_dialect(std::string_view s) {
  if (s == "openai") return Dialect::OpenAI;
  if (s == "ollama") return Dialect::Ollama;
  fail(ErrorKind::InvalidConfig, "llm.dialect must be \"openai\" or \"ollama\", got \"" + std::string(s) + "\"");
}

inline std::string to_string(Dialect d) { return d == Dialect::OpenAI ? "openai" : "ollama"; }

struct HttpConfig {
  Dialect dialect = Dialect::Ollama;
  std::string endpoint_url = "http://127.0.0.1:11434";
  std::string model_name = "llama3.1:8b";
  double timeout_secs = 120.0;
};

/// Chat-completion client for OpenAI-style (/v1/chat/completions) and
/// Ollama-style (/api/chat) servers. endpoint_url is the server root; the
/// dialect picks the path.
class HttpGateway final : public LlmGateway {
 public:
  explicit HttpGateway(HttpConfig config, http::RetryPolicy retry = {})
      : config_(std::move(config)), endpoint_(http::parse_endpoint(config_.endpoint_url)), retry_(retry) {
    if (!(config_.timeout_secs > 0.0)) fail(ErrorKind::InvalidConfig, "llm.timeout_secs must be positive");
    if (config_.model_name.empty()) fail(ErrorKind::InvalidConfig, "llm.model_name must be non-empty");
  }

  nlohmann::json request_body(const ChatRequest& r) const {
    nlohmann::json messages = nlohmann::json::array();
    if (!r.system_prompt.empty()) messages.push_back({{"role", "system"}, {"content", r.system_prompt}});
    messages.push_back({{"role", "user"}, {"content", r.user_prompt}});
    nlohmann::json body = {{"model", config_.model_name}, {"messages", messages}};
    if (config_.dialect == Dialect::OpenAI) {
      body["temperature"] = r.temperature;
      if (r.max_tokens) body["max_tokens"] = *r.max_tokens;
    } else {
      body["stream"] = false;
      body["options"] = {{"temperature", r.temperature}};
      if (r.max_tokens) body["options"]["num_predict"] = *r.max_tokens;
    }
    return body;
  }

  std::string complete(const ChatRequest& request) override {
    validate(request);
    httplib::Headers headers;
    if (auto key = http::env(kLlmApiKeyEnv)) headers.emplace("Authorization", "Bearer " + *key);
    const auto timeout = std::chrono::milliseconds(static_cast<long long>(config_.timeout_secs * 1000.0));
    const std::string path = endpoint_.path(config_.dialect == Dialect::OpenAI ? "/v1/chat/completions" : "/api/chat");
    const auto res =
        http::post_json(endpoint_, path, request_body(request).dump(), headers, timeout, retry_, "llm backend");
    try {
      const auto j = nlohmann::json::parse(res.body);
      if (config_.dialect == Dialect::OpenAI) return j.at("choices").at(0).at("message").at("content").get<std::string>();
      return j.at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::BackendRefused, std::string("llm backend reply not understood: ") + e.what());
    }
  }

  std::string name() const override { return "http llm backend (" + to_string(config_.dialect) + ")"; }

 private:
  HttpConfig config_;
  http::Endpoint endpoint_;
  http::RetryPolicy retry_;
};

}  // namespace scorerag::llm
