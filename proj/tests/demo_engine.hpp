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

#include <memory>
#include <optional>
#include <string>

#include "scorerag/config.hpp"
#include "scorerag/pipeline.hpp"

namespace scorerag::test {

inline std::optional<std::string> no_env(const std::string&) { return std::nullopt; }

inline const std::filesystem::path& demo_dir() {
  static const std::filesystem::path dir = std::filesystem::path(SCORERAG_DATA_DIR) / "demo";
  return dir;
}

inline const char* kDemoQuery = "美中官員會晤";

/// The demo config with the environment ignored.
inline config::PipelineConfig demo_config() { return config::load(demo_dir() / "config.json", no_env); }

/// An engine over the demo corpus, ingested and indexed in memory. The
/// gateway factory and clock default to the ones Engine::open would pick.
inline pipeline::Engine demo_engine(std::optional<pipeline::GatewayFactory> factory = std::nullopt,
                                    pipeline::Clock clock = pipeline::frozen_clock(),
                                    config::PipelineConfig cfg = demo_config()) {
  auto store = std::make_shared<corpus::JsonlDocumentStore>();
  pipeline::ingest(demo_dir() / "raw", *store);
  auto embedder = std::make_shared<embedding::MockBackend>();
  auto idx = std::make_shared<index::VectorIndex>();
  retrieval::build_index(*store, cfg.chunker, *embedder, cfg.embedding.http, *idx);
  auto f = factory ? *factory : pipeline::make_gateway_factory(cfg);
  return pipeline::Engine(cfg, store, idx, embedder, f, clock);
}

}  // namespace scorerag::test
