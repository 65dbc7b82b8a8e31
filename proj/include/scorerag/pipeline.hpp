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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scorerag/config.hpp"
#include "scorerag/consistency.hpp"
#include "scorerag/corpus.hpp"
#include "scorerag/embedding.hpp"
#include "scorerag/embedding_http.hpp"
#include "scorerag/generator.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/llm_http.hpp"
#include "scorerag/log.hpp"
#include "scorerag/retrieval.hpp"
#include "scorerag/summarizer.hpp"
#include "scorerag/vector_index.hpp"

namespace scorerag::pipeline {

// ---------------------------------------------------------------------------
// Backends from config

inline std::unique_ptr<embedding::EmbeddingBackend> make_embedder(const config::PipelineConfig& c) {
  if (c.embedding.backend == "http") return std::make_unique<embedding::HttpBackend>(c.embedding.http);
  return std::make_unique<embedding::MockBackend>();
}

using GatewayFactory = std::function<std::unique_ptr<llm::LlmGateway>()>;

/// One fresh gateway per pipeline run, so a scripted stub restarts its
/// reply cycles and no request state leaks between runs.
inline GatewayFactory make_gateway_factory(const config::PipelineConfig& c) {
  if (c.llm.backend == "http") {
    const llm::HttpConfig http = c.llm.http;
    llm::HttpGateway probe(http);  // validates the endpoint once, up front
    return [http] { return std::make_unique<llm::HttpGateway>(http); };
  }
  auto rules = std::make_shared<const std::vector<llm::StubRule>>(llm::StubGateway::load(c.llm.stub_script).rules());
  return [rules] { return std::make_unique<llm::StubGateway>(*rules); };
}

// ---------------------------------------------------------------------------
// Ingest and indexing

struct IngestReport {
  std::size_t read = 0;
  std::size_t stored = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

/// Cleans raw articles and stores them. Articles without an id get fresh
/// ones above the largest id seen; articles that fail cleaning or collide
/// with a stored id are skipped with a warning.
inline IngestReport ingest(const std::filesystem::path& raw_dir, corpus::DocumentStore& store,
                           const corpus::CleanerConfig& cleaner = {}) {
  const auto inputs = corpus::read_raw_directory(raw_dir);
  IngestReport report;
  report.read = inputs.size();
  std::int64_t next_id = 1;
  for (int year : store.years()) {
    for (const auto& r : store.partition(year).records) next_id = std::max(next_id, r.news_id.value + 1);
  }
  for (const auto& in : inputs) {
    if (in.article.news_id) next_id = std::max(next_id, in.article.news_id->value + 1);
  }
  for (const auto& in : inputs) {
    const NewsId id = in.article.news_id.value_or(NewsId{next_id});
    try {
      const auto record = corpus::build_record(in.article, id, cleaner);
      store.put(record);
      if (!in.article.news_id) ++next_id;
      ++report.stored;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyAfterCleaning && e.kind() != ErrorKind::DuplicateId &&
          e.kind() != ErrorKind::InvalidInput) {
        throw;
      }
      ++report.skipped;
      std::string msg = in.origin + ": skipped (" + e.what() + ")";
      log::warn(msg);
      report.warnings.push_back(std::move(msg));
    }
  }
  return report;
}

/// Chunks and embeds the whole corpus and writes the index to index_dir.
inline std::size_t build_and_save_index(const config::PipelineConfig& c, const corpus::DocumentStore& store,
                                        embedding::EmbeddingBackend& embedder) {
  index::VectorIndex idx;
  const std::size_t n = retrieval::build_index(store, c.chunker, embedder, c.embedding.http, idx);
  idx.save(c.paths.index_dir);
  return n;
}

// ---------------------------------------------------------------------------
// Generation

struct Overrides {
  std::optional<std::size_t> k;
  std::optional<double> threshold;
};

/// Bounds for request-level overrides: 1 <= k <= 50, 0 <= threshold <= 100.
inline void validate(const Overrides& o) {
  if (o.k && (*o.k < 1 || *o.k > config::kMaxK)) fail(ErrorKind::InvalidInput, "k must be within [1, 50]");
  if (o.threshold && !(*o.threshold >= 0.0 && *o.threshold <= 100.0)) {
    fail(ErrorKind::InvalidInput, "threshold must be within [0, 100]");
  }
}

inline Overrides overrides_from_json(const nlohmann::json& j) {
  Overrides o;
  try {
    if (j.contains("k") && !j["k"].is_null()) {
      if (!j["k"].is_number_integer()) fail(ErrorKind::InvalidInput, "k must be an integer");
      const auto k = j["k"].get<long long>();
      if (k < 1 || k > static_cast<long long>(config::kMaxK)) fail(ErrorKind::InvalidInput, "k must be within [1, 50]");
      o.k = static_cast<std::size_t>(k);
    }
    if (j.contains("threshold") && !j["threshold"].is_null()) {
      if (!j["threshold"].is_number()) fail(ErrorKind::InvalidInput, "threshold must be a number");
      o.threshold = j["threshold"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, e.what());
  }
  validate(o);
  return o;
}

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct ScoredEntry {
  scoring::ScoredArticle scored;
  bool kept = false;
  std::string reason;
};

struct GenerateResponse {
  generation::GeneratedArticle article;
  std::vector<ScoredEntry> scored_articles;  // kept ones first, in reference order
  std::vector<StageTiming> timings;
  double total_ms = 0.0;
  std::size_t k = 0;
  double threshold = 0.0;
};

/// Error raised by a pipeline stage, carrying what finished before it.
class StageError : public Error {
 public:
  StageError(const Error& cause, std::string stage, nlohmann::ordered_json partial)
      : Error(cause.kind(), "stage " + stage + ": " + cause.detail()),
        stage_(std::move(stage)),
        partial_(std::move(partial)) {}

  const std::string& stage() const noexcept { return stage_; }
  const nlohmann::ordered_json& partial() const noexcept { return partial_; }

 private:
  std::string stage_;
  nlohmann::ordered_json partial_;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;

inline Clock real_clock() {
  return [] { return std::chrono::steady_clock::now(); };
}

/// Always returns the same instant, so every timing is 0 and stub-mode
/// output is byte-reproducible.
inline Clock frozen_clock() {
  return [] { return std::chrono::steady_clock::time_point{}; };
}

inline nlohmann::ordered_json to_json(const ScoredEntry& e) {
  const auto& s = e.scored;
  const auto& rec = s.article.record;
  nlohmann::ordered_json j;
  j["news_id"] = rec.news_id.value;
  j["date"] = rec.published_date.iso();
  j["title"] = rec.title;
  j["raw_scores"] = s.raw_scores;
  j["mean_score"] = generation::round2(s.mean_score);
  j["band"] = scoring::to_string(s.band);
  j["best_distance"] = s.article.best_distance;
  j["matched_chunk_ids"] = s.article.matched_chunk_ids;
  j["status"] = e.kept ? "kept" : "filtered";
  j["reason"] = e.reason;
  return j;
}

inline nlohmann::ordered_json to_json(const GenerateResponse& r) {
  nlohmann::ordered_json j = generation::to_json(r.article);
  j["scored_articles"] = nlohmann::ordered_json::array();
  for (const auto& e : r.scored_articles) j["scored_articles"].push_back(to_json(e));
  nlohmann::ordered_json t;
  for (const auto& s : r.timings) t[s.stage] = s.ms;
  t["total"] = r.total_ms;
  j["timings_ms"] = t;
  j["settings"] = {{"k", r.k}, {"threshold", r.threshold}};
  return j;
}

/// The summary grade for a kept article. A threshold under the lowest band
/// can keep articles the grade table does not cover; they get the smallest
/// grade and a warning.
inline summary::SummaryGrade grade_for_kept(const scoring::ScoredArticle& s, std::vector<std::string>& warnings) {
  const double floor = summary::kMinScore;
  if (s.mean_score >= floor) return summary::grade_for(s.mean_score);
  std::string msg = "news " + s.article.record.news_id.str() + " scored " + generation::format_score(s.mean_score) +
                    ", below the lowest summary band; summarized at MINIMAL";
  log::warn(msg);
  warnings.push_back(std::move(msg));
  return summary::grade_for(floor);
}

/// Shared, read-only state for answering queries: config, corpus, index
/// and backends. run() may be called from many threads at once.
class Engine {
 public:
  Engine(config::PipelineConfig config, std::shared_ptr<const corpus::DocumentStore> store,
         std::shared_ptr<const index::VectorIndex> index, std::shared_ptr<embedding::EmbeddingBackend> embedder,
         GatewayFactory llm_factory, Clock clock)
      : config_(std::move(config)),
        store_(std::move(store)),
        index_(std::move(index)),
        embedder_(std::move(embedder)),
        llm_factory_(std::move(llm_factory)),
        clock_(std::move(clock)) {}

  /// Loads corpus and index from the configured paths. Stub mode uses the
  /// frozen clock.
  static Engine open(const config::PipelineConfig& c) {
    if (!std::filesystem::is_directory(c.paths.corpus_dir)) {
      fail(ErrorKind::EmptyCorpus, "corpus directory " + c.paths.corpus_dir.string() + " does not exist; run ingest");
    }
    auto store = std::make_shared<corpus::JsonlDocumentStore>(c.paths.corpus_dir);
    if (store->size() == 0) fail(ErrorKind::EmptyCorpus, "corpus at " + c.paths.corpus_dir.string() + " is empty");
    if (!std::filesystem::exists(c.paths.index_dir / "vectors.bin")) {
      fail(ErrorKind::EmptyIndex, "no index at " + c.paths.index_dir.string() + "; run index");
    }
    auto idx = std::make_shared<index::VectorIndex>(index::VectorIndex::load(c.paths.index_dir));
    return Engine(c, store, idx, make_embedder(c), make_gateway_factory(c),
                  c.stub_mode() ? frozen_clock() : real_clock());
  }

  const config::PipelineConfig& config() const { return config_; }
  const corpus::DocumentStore& store() const { return *store_; }
  const index::VectorIndex& index() const { return *index_; }
  std::string embedder_name() const { return embedder_->name(); }
  std::string llm_name() const { return llm_factory_()->name(); }

  /// retrieve -> score -> filter -> summarize -> build_context -> generate.
  GenerateResponse run(const std::string& query, const Overrides& overrides = {},
                       llm::Transcript* transcript = nullptr) const {
    validate(overrides);
    if (text::is_blank(query)) fail(ErrorKind::InvalidInput, "query must be non-empty");
    GenerateResponse resp;
    resp.k = overrides.k.value_or(config_.k);
    scoring::ScoringConfig scfg = config_.scoring;
    if (overrides.threshold) scfg.threshold = *overrides.threshold;
    resp.threshold = scfg.threshold;
    resp.article.query = query;

    auto base = llm_factory_();
    std::optional<llm::RecordingGateway> recording;
    if (transcript) recording.emplace(*base, *transcript);
    llm::LlmGateway& llm = recording ? static_cast<llm::LlmGateway&>(*recording) : *base;

    std::vector<std::string> warnings;
    const auto start = clock_();
    auto stage = [&](const char* name, auto&& fn) {
      const auto t0 = clock_();
      try {
        fn();
      } catch (const Error& e) {
        resp.article.warnings = warnings;
        throw StageError(e, name, to_json(resp));
      }
      resp.timings.push_back(
          StageTiming{name, std::chrono::duration<double, std::milli>(clock_() - t0).count()});
    };

    retrieval::RetrievalResult retrieved;
    stage("retrieve", [&] {
      retrieved = retrieval::retrieve(query, resp.k, *embedder_, config_.embedding.http, *index_, *store_);
      warnings.insert(warnings.end(), retrieved.warnings.begin(), retrieved.warnings.end());
    });

    std::vector<scoring::ScoredArticle> scored;
    stage("score", [&] {
      for (const auto& a : retrieved.articles) scored.push_back(scoring::score_article(llm, query, a, scfg, warnings));
    });

    scoring::FilterResult filtered;
    stage("filter", [&] {
      filtered = scoring::partition_by_threshold(scored, scfg);
      for (std::size_t i = 0; i < filtered.kept.size(); ++i) {
        resp.scored_articles.push_back(ScoredEntry{filtered.kept[i], true, "reference " + std::to_string(i + 1)});
      }
      for (const auto& d : filtered.dropped) {
        resp.scored_articles.push_back(ScoredEntry{d, false,
                                                   "mean score " + generation::format_score(d.mean_score) +
                                                       " below threshold " + generation::format_score(scfg.threshold)});
      }
    });

    std::vector<summary::GradedSummary> summaries;
    stage("summarize", [&] {
      summary::SummarizerConfig sum_cfg{config_.language, config_.summarizer_temperature, 200};
      for (const auto& s : filtered.kept) {
        summaries.push_back(summary::summarize(llm, s.article.record, grade_for_kept(s, warnings), s.mean_score,
                                               sum_cfg, warnings));
      }
    });

    std::vector<generation::ReferenceBlock> refs;
    stage("build_context", [&] {
      refs = generation::build_context(summaries, filtered.kept);
      resp.article.references = refs;
    });

    stage("generate", [&] {
      generation::GeneratorConfig gen_cfg{config_.language, config_.generator_temperature,
                                          config_.generator_max_tokens};
      auto article = generation::generate(llm, query, refs, gen_cfg);
      warnings.insert(warnings.end(), article.warnings.begin(), article.warnings.end());
      article.warnings = warnings;
      resp.article = std::move(article);
    });

    resp.total_ms = std::chrono::duration<double, std::milli>(clock_() - start).count();
    return resp;
  }

 private:
  config::PipelineConfig config_;
  std::shared_ptr<const corpus::DocumentStore> store_;
  std::shared_ptr<const index::VectorIndex> index_;
  std::shared_ptr<embedding::EmbeddingBackend> embedder_;
  GatewayFactory llm_factory_;
  Clock clock_;
};

}  // namespace scorerag::pipeline
