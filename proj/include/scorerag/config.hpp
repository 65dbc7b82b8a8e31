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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "scorerag/chunker.hpp"
#include "scorerag/consistency.hpp"
#include "scorerag/embedding.hpp"
#include "scorerag/embedding_http.hpp"
#include "scorerag/error.hpp"
#include "scorerag/evaluation.hpp"
#include "scorerag/generator.hpp"
#include "scorerag/llm_http.hpp"
#include "scorerag/summarizer.hpp"

namespace scorerag::config {

inline constexpr std::size_t kMaxK = 50;

struct PathsConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::filesystem::path index_dir = "index";
};

struct EmbeddingSection {
  std::string backend = "mock";  // mock | http
  embedding::BackendConfig http;
};

struct LlmSection {
  std::string backend = "stub";  // stub | http
  llm::HttpConfig http;
  std::filesystem::path stub_script;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
};

struct PipelineConfig {
  PathsConfig paths;
  chunking::SplitterConfig chunker;
  EmbeddingSection embedding;
  LlmSection llm;
  std::size_t k = 4;
  scoring::ScoringConfig scoring;
  prompts::Language language = prompts::Language::ZhTw;
  double summarizer_temperature = 0.2;
  double generator_temperature = 0.7;
  std::optional<int> generator_max_tokens;
  double evaluation_temperature = 0.0;
  ServiceConfig service;

  bool stub_mode() const { return llm.backend == "stub"; }
};

/// The defaults as a JSON document. Its shape is the config file schema;
/// keys missing from a file keep these values.
inline nlohmann::ordered_json default_json() {
  const PipelineConfig d;
  nlohmann::ordered_json j;
  j["paths"] = {{"corpus_dir", d.paths.corpus_dir.string()}, {"index_dir", d.paths.index_dir.string()}};
  j["chunker"] = {{"chunk_size", d.chunker.chunk_size}, {"chunk_overlap", d.chunker.chunk_overlap}};
  j["embedding"] = {{"backend", d.embedding.backend},
                    {"endpoint_url", d.embedding.http.endpoint_url},
                    {"model_name", d.embedding.http.model_name},
                    {"batch_size", d.embedding.http.batch_size},
                    {"device", nullptr},
                    {"query_prefix", d.embedding.http.query_prefix},
                    {"passage_prefix", d.embedding.http.passage_prefix},
                    {"timeout_secs", d.embedding.http.timeout_secs}};
  j["llm"] = {{"backend", d.llm.backend},
              {"dialect", llm::to_string(d.llm.http.dialect)},
              {"endpoint_url", d.llm.http.endpoint_url},
              {"model_name", d.llm.http.model_name},
              {"timeout_secs", d.llm.http.timeout_secs},
              {"stub_script", ""}};
  j["retrieval"] = {{"k", d.k}};
  j["scoring"] = {{"num_samples", d.scoring.num_samples},
                  {"threshold", d.scoring.threshold},
                  {"temperature", d.scoring.temperature}};
  j["summarizer"] = {{"prompt_language", prompts::to_string(d.language)}, {"temperature", d.summarizer_temperature}};
  j["generator"] = {{"temperature", d.generator_temperature}, {"max_tokens", nullptr}};
  j["evaluation"] = {{"temperature", d.evaluation_temperature}};
  j["service"] = {{"host", d.service.host}, {"port", d.service.port}};
  return j;
}

namespace detail {

inline std::string env_name(const std::string& section, const std::string& key) {
  std::string out = "SCORERAG_";
  for (char c : section + "_" + key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

/// Reads an env override with the type of the default value.
inline nlohmann::json env_value(const std::string& name, const std::string& raw, const nlohmann::json& like) {
  try {
    if (like.is_string()) return raw;
    if (like.is_boolean()) {
      if (raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
    } else if (like.is_number_integer() || like.is_number_unsigned()) {
      std::size_t used = 0;
      const long long v = std::stoll(raw, &used);
      if (used == raw.size()) return v;
    } else if (like.is_number()) {
      std::size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used == raw.size()) return v;
    } else {
      // Optional keys (null default): a number if it parses as one.
      if (raw == "null" || raw.empty()) return nullptr;
      const auto j = nlohmann::json::parse(raw, nullptr, false);
      return j.is_discarded() || !j.is_primitive() ? nlohmann::json(raw) : j;
    }
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidConfig, name + "=\"" + raw + "\" is not a valid value");
}

template <typename T>
T get(const nlohmann::json& j, const char* section, const char* key) {
  try {
    return j.at(section).at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string(section) + "." + key + ": " + e.what());
  }
}

inline std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.empty() || p.is_absolute()) return p;
  return (base / p).lexically_normal();
}

}  // namespace detail

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

/// Merges a config document over the defaults, applies SCORERAG_<SECTION>_<KEY>
/// environment overrides and validates. Unknown sections or keys are
/// rejected so typos do not silently fall back to defaults. Relative paths
/// resolve against base_dir.
inline PipelineConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                                const EnvLookup& env = process_env) {
  nlohmann::json j = default_json();
  if (!doc.is_null()) {
    if (!doc.is_object()) fail(ErrorKind::InvalidConfig, "config must be a JSON object");
    for (const auto& [section, body] : doc.items()) {
      if (!j.contains(section)) fail(ErrorKind::InvalidConfig, "unknown config section \"" + section + "\"");
      if (!body.is_object()) fail(ErrorKind::InvalidConfig, "config section \"" + section + "\" must be an object");
      for (const auto& [key, value] : body.items()) {
        if (!j[section].contains(key)) fail(ErrorKind::InvalidConfig, "unknown config key \"" + section + "." + key + "\"");
        j[section][key] = value;
      }
    }
  }
  const nlohmann::json defaults = default_json();
  for (auto& [section, body] : j.items()) {
    for (auto& [key, value] : body.items()) {
      const std::string name = detail::env_name(section, key);
      if (auto raw = env(name)) value = detail::env_value(name, *raw, defaults[section][key]);
    }
  }

  PipelineConfig c;
  using detail::get;
  c.paths.corpus_dir = detail::resolve(get<std::string>(j, "paths", "corpus_dir"), base_dir);
  c.paths.index_dir = detail::resolve(get<std::string>(j, "paths", "index_dir"), base_dir);
  c.chunker.chunk_size = get<std::size_t>(j, "chunker", "chunk_size");
  c.chunker.chunk_overlap = get<std::size_t>(j, "chunker", "chunk_overlap");

  c.embedding.backend = get<std::string>(j, "embedding", "backend");
  c.embedding.http.endpoint_url = get<std::string>(j, "embedding", "endpoint_url");
  c.embedding.http.model_name = get<std::string>(j, "embedding", "model_name");
  c.embedding.http.batch_size = get<std::size_t>(j, "embedding", "batch_size");
  if (!j["embedding"]["device"].is_null()) c.embedding.http.device_hint = get<std::string>(j, "embedding", "device");
  c.embedding.http.query_prefix = get<std::string>(j, "embedding", "query_prefix");
  c.embedding.http.passage_prefix = get<std::string>(j, "embedding", "passage_prefix");
  c.embedding.http.timeout_secs = get<double>(j, "embedding", "timeout_secs");

  c.llm.backend = get<std::string>(j, "llm", "backend");
  c.llm.http.dialect = llm::parse_dialect(get<std::string>(j, "llm", "dialect"));
  c.llm.http.endpoint_url = get<std::string>(j, "llm", "endpoint_url");
  c.llm.http.model_name = get<std::string>(j, "llm", "model_name");
  c.llm.http.timeout_secs = get<double>(j, "llm", "timeout_secs");
  c.llm.stub_script = detail::resolve(get<std::string>(j, "llm", "stub_script"), base_dir);

  const auto k = get<long long>(j, "retrieval", "k");
  if (k < 1 || k > static_cast<long long>(kMaxK)) fail(ErrorKind::InvalidConfig, "retrieval.k must be within [1, 50]");
  c.k = static_cast<std::size_t>(k);
  const auto samples = get<long long>(j, "scoring", "num_samples");
  if (samples < 1) fail(ErrorKind::InvalidConfig, "scoring.num_samples must be >= 1");
  c.scoring.num_samples = static_cast<std::size_t>(samples);
  c.scoring.threshold = get<double>(j, "scoring", "threshold");
  c.scoring.temperature = get<double>(j, "scoring", "temperature");
  c.language = prompts::parse_language(get<std::string>(j, "summarizer", "prompt_language"));
  c.scoring.language = c.language;
  c.summarizer_temperature = get<double>(j, "summarizer", "temperature");
  c.generator_temperature = get<double>(j, "generator", "temperature");
  if (!j["generator"]["max_tokens"].is_null()) c.generator_max_tokens = get<int>(j, "generator", "max_tokens");
  c.evaluation_temperature = get<double>(j, "evaluation", "temperature");
  c.service.host = get<std::string>(j, "service", "host");
  c.service.port = get<int>(j, "service", "port");

  chunking::validate(c.chunker);
  scoring::validate(c.scoring);
  embedding::validate(c.embedding.http);
  if (c.embedding.backend != "mock" && c.embedding.backend != "http") {
    fail(ErrorKind::InvalidConfig, "embedding.backend must be \"mock\" or \"http\"");
  }
  if (c.embedding.backend == "http" && c.embedding.http.endpoint_url.empty()) {
    fail(ErrorKind::InvalidConfig, "embedding.endpoint_url is required for the http backend");
  }
  if (c.llm.backend != "stub" && c.llm.backend != "http") {
    fail(ErrorKind::InvalidConfig, "llm.backend must be \"stub\" or \"http\"");
  }
  if (c.llm.backend == "stub" && c.llm.stub_script.empty()) {
    fail(ErrorKind::InvalidConfig, "llm.stub_script is required for the stub backend");
  }
  if (!(c.llm.http.timeout_secs > 0.0)) fail(ErrorKind::InvalidConfig, "llm.timeout_secs must be positive");
  for (double t : {c.summarizer_temperature, c.generator_temperature, c.evaluation_temperature}) {
    if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidConfig, "temperatures must be finite and >= 0");
  }
  if (c.generator_max_tokens && *c.generator_max_tokens < 1) {
    fail(ErrorKind::InvalidConfig, "generator.max_tokens must be >= 1");
  }
  if (c.service.port < 0 || c.service.port > 65535) fail(ErrorKind::InvalidConfig, "service.port out of range");
  return c;
}

inline PipelineConfig load(const std::filesystem::path& path, const EnvLookup& env = process_env) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidConfig, "cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
  return from_json(doc, std::filesystem::absolute(path).parent_path(), env);
}

/// Strips userinfo ("user:secret@") from a URL.
inline std::string redact_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) return url;
  const auto host_start = scheme + 3;
  const auto at = url.find('@', host_start);
  const auto slash = url.find('/', host_start);
  if (at == std::string::npos || (slash != std::string::npos && at > slash)) return url;
  return url.substr(0, host_start) + "***@" + url.substr(at + 1);
}

/// The effective config for display. Secrets never live in the config;
/// only whether the credential variables are set is reported.
inline nlohmann::ordered_json to_redacted_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["paths"] = {{"corpus_dir", c.paths.corpus_dir.string()}, {"index_dir", c.paths.index_dir.string()}};
  j["chunker"] = {{"chunk_size", c.chunker.chunk_size}, {"chunk_overlap", c.chunker.chunk_overlap}};
  j["embedding"] = {{"backend", c.embedding.backend},
                    {"endpoint_url", redact_url(c.embedding.http.endpoint_url)},
                    {"model_name", c.embedding.http.model_name},
                    {"batch_size", c.embedding.http.batch_size},
                    {"device", c.embedding.http.device_hint ? nlohmann::ordered_json(*c.embedding.http.device_hint)
                                                            : nlohmann::ordered_json(nullptr)},
                    {"query_prefix", c.embedding.http.query_prefix},
                    {"passage_prefix", c.embedding.http.passage_prefix},
                    {"timeout_secs", c.embedding.http.timeout_secs},
                    {"token_set", http::env(embedding::kEmbeddingTokenEnv).has_value()}};
  j["llm"] = {{"backend", c.llm.backend},
              {"dialect", llm::to_string(c.llm.http.dialect)},
              {"endpoint_url", redact_url(c.llm.http.endpoint_url)},
              {"model_name", c.llm.http.model_name},
              {"timeout_secs", c.llm.http.timeout_secs},
              {"stub_script", c.llm.stub_script.filename().string()},
              {"api_key_set", http::env(llm::kLlmApiKeyEnv).has_value()}};
  j["retrieval"] = {{"k", c.k}};
  j["scoring"] = {{"num_samples", c.scoring.num_samples},
                  {"threshold", c.scoring.threshold},
                  {"temperature", c.scoring.temperature}};
  j["summarizer"] = {{"prompt_language", prompts::to_string(c.language)}, {"temperature", c.summarizer_temperature}};
  j["generator"] = {{"temperature", c.generator_temperature},
                    {"max_tokens", c.generator_max_tokens ? nlohmann::ordered_json(*c.generator_max_tokens)
                                                          : nlohmann::ordered_json(nullptr)}};
  j["evaluation"] = {{"temperature", c.evaluation_temperature}};
  j["service"] = {{"host", c.service.host}, {"port", c.service.port}};
  j["prompt_version"] = prompts::kVersion;
  return j;
}

}  // namespace scorerag::config
