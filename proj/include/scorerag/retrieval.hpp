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

#include <map>
#include <string>
#include <vector>

#include "scorerag/chunker.hpp"
#include "scorerag/corpus.hpp"
#include "scorerag/embedding.hpp"
#include "scorerag/log.hpp"
#include "scorerag/vector_index.hpp"

namespace scorerag::retrieval {

struct RetrievedArticle {
  NewsRecord record;
  double best_distance = 0.0;
  std::vector<std::string> matched_chunk_ids;
};

struct RetrievalResult {
  std::vector<RetrievedArticle> articles;
  std::vector<std::string> warnings;
};

/// Groups top-k chunk hits by parent article and resolves each parent
/// through the document store. Hits arrive sorted by distance, so the
/// first hit of an article carries its best distance and first-occurrence
/// order is best_distance order. Ids missing from the store are skipped
/// with a warning.
inline RetrievalResult group_hits(const std::vector<index::SearchHit>& hits, const corpus::DocumentStore& store) {
  RetrievalResult out;
  std::map<NewsId, std::size_t> slot;
  std::map<NewsId, bool> dangling;
  for (const auto& hit : hits) {
    const NewsId id = hit.metadata.news_id;
    if (auto it = slot.find(id); it != slot.end()) {
      out.articles[it->second].matched_chunk_ids.push_back(hit.chunk_id);
      continue;
    }
    if (dangling.count(id)) continue;
    try {
      out.articles.push_back(RetrievedArticle{store.get_full(id), hit.distance, {hit.chunk_id}});
      slot.emplace(id, out.articles.size() - 1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotFound) throw;
      dangling.emplace(id, true);
      std::string msg = "chunk " + hit.chunk_id + " points at news " + id.str() + " which is not in the corpus; skipped";
      log::warn(msg);
      out.warnings.push_back(std::move(msg));
    }
  }
  return out;
}

/// Embeds the query, fetches the k nearest chunks and maps them back to
/// full articles. k counts chunks, so fewer than k articles may come back.
inline RetrievalResult retrieve(const std::string& query, std::size_t k, embedding::EmbeddingBackend& embedder,
                                const embedding::BackendConfig& embed_config, const index::VectorIndex& idx,
                                const corpus::DocumentStore& store) {
  if (text::is_blank(query)) fail(ErrorKind::InvalidInput, "query must be non-empty");
  if (k == 0) fail(ErrorKind::InvalidInput, "k must be >= 1");
  const auto q = embedding::embed_query(embedder, query, embed_config);
  return group_hits(idx.search(q, k), store);
}

/// Chunks, embeds and indexes every article in the store, partition by
/// partition in year order. Returns the number of chunks added.
inline std::size_t build_index(const corpus::DocumentStore& store, const chunking::SplitterConfig& splitter,
                               embedding::EmbeddingBackend& embedder, const embedding::BackendConfig& embed_config,
                               index::VectorIndex& idx) {
  if (store.size() == 0) fail(ErrorKind::EmptyCorpus, "the corpus has no articles to index");
  std::vector<chunking::Chunk> chunks;
  std::vector<index::ChunkMetadata> meta;
  for (int year : store.years()) {
    for (const auto& record : store.partition(year).records) {
      for (auto& c : chunking::chunk_article(record, splitter)) {
        meta.push_back(index::ChunkMetadata{record.published_date, record.title, record.news_id});
        chunks.push_back(std::move(c));
      }
    }
  }
  if (chunks.empty()) fail(ErrorKind::EmptyCorpus, "no chunks produced from the corpus");
  std::vector<std::string> texts;
  texts.reserve(chunks.size());
  for (const auto& c : chunks) texts.push_back(c.text);
  const auto vectors = embedding::embed_batch(embedder, texts, embed_config, embedding::TextRole::Passage);
  std::vector<index::IndexedChunk> rows;
  rows.reserve(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    rows.push_back(index::IndexedChunk{chunks[i].chunk_id, vectors[i], meta[i], chunks[i].text});
  }
  return idx.add(rows);
}

}  // namespace scorerag::retrieval
