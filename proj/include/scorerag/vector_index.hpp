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

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "scorerag/corpus.hpp"
#include "scorerag/embedding.hpp"
#include "scorerag/error.hpp"

namespace scorerag::index {

using embedding::EmbeddingVector;
using embedding::kDim;

struct ChunkMetadata {
  Date published_date;
  std::string title;
  NewsId news_id;

  friend bool operator==(const ChunkMetadata&, const ChunkMetadata&) = default;
};

struct IndexedChunk {
  std::string chunk_id;
  EmbeddingVector vector;
  ChunkMetadata metadata;
  std::string page_content;
};

struct SearchHit {
  std::string chunk_id;
  ChunkMetadata metadata;
  std::string page_content;
  double distance = 0.0;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// d = sum_i (x_i - y_i)^2
inline double sq_l2(const double* x, const double* y, std::size_t n) {
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i] - y[i];
    d += t * t;
  }
  return d;
}

inline double sq_l2(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    fail(ErrorKind::DimensionMismatch,
         "sq_l2 on vectors of size " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  return sq_l2(x.data(), y.data(), x.size());
}

inline double sq_l2(const EmbeddingVector& x, const EmbeddingVector& y) { return sq_l2(x.values(), y.values()); }

namespace detail {

inline constexpr std::array<char, 4> kMagic = {'S', 'R', 'V', 'I'};
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8 + 8;

template <typename T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

inline std::uint64_t checksum(std::string_view payload, std::string_view meta) {
  return text::fnv1a64(meta, text::fnv1a64(payload));
}

inline nlohmann::ordered_json meta_to_json(const std::string& chunk_id, const ChunkMetadata& m,
                                           const std::string& content) {
  nlohmann::ordered_json j;
  j["chunk_id"] = chunk_id;
  j["news_id"] = m.news_id.value;
  j["published_date"] = m.published_date.iso();
  j["title"] = m.title;
  j["page_content"] = content;
  return j;
}

}  // namespace detail

/// Exact nearest-neighbour index over squared-L2 distance.
///
/// Vectors are kept as one contiguous float array; a search scans all of
/// them with a bounded max-heap. Equal distances are ordered by chunk_id.
/// Searches take a shared lock; add/load take an exclusive one.
class VectorIndex {
 public:
  VectorIndex() = default;
  VectorIndex(const VectorIndex&) = delete;
  VectorIndex& operator=(const VectorIndex&) = delete;
  VectorIndex(VectorIndex&& other) noexcept {
    std::unique_lock lock(other.mu_);
    vectors_ = std::move(other.vectors_);
    ids_ = std::move(other.ids_);
    meta_ = std::move(other.meta_);
    contents_ = std::move(other.contents_);
    id_set_ = std::move(other.id_set_);
  }
  VectorIndex& operator=(VectorIndex&& other) noexcept {
    if (this == &other) return *this;
    std::scoped_lock lock(mu_, other.mu_);
    vectors_ = std::move(other.vectors_);
    ids_ = std::move(other.ids_);
    meta_ = std::move(other.meta_);
    contents_ = std::move(other.contents_);
    id_set_ = std::move(other.id_set_);
    return *this;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return ids_.size();
  }

  bool empty() const { return size() == 0; }

  /// All-or-nothing: a duplicate anywhere in the batch leaves the index
  /// unchanged.
  std::size_t add(const std::vector<IndexedChunk>& chunks) {
    std::unique_lock lock(mu_);
    std::unordered_set<std::string> incoming;
    for (const auto& c : chunks) {
      if (c.chunk_id.empty()) fail(ErrorKind::InvalidInput, "chunk_id must be non-empty");
      if (c.page_content.empty()) fail(ErrorKind::InvalidInput, "chunk " + c.chunk_id + " has empty page_content");
      if (c.vector.size() != kDim) fail(ErrorKind::DimensionMismatch, "chunk " + c.chunk_id + " vector dimension");
      if (id_set_.count(c.chunk_id) || !incoming.insert(c.chunk_id).second) {
        fail(ErrorKind::DuplicateChunkId, "chunk_id " + c.chunk_id + " already indexed");
      }
    }
    vectors_.reserve(vectors_.size() + chunks.size() * kDim);
    for (const auto& c : chunks) {
      for (double v : c.vector.values()) vectors_.push_back(static_cast<float>(v));
      ids_.push_back(c.chunk_id);
      meta_.push_back(c.metadata);
      contents_.push_back(c.page_content);
      id_set_.insert(c.chunk_id);
    }
    return chunks.size();
  }

  std::size_t add(const IndexedChunk& chunk) { return add(std::vector<IndexedChunk>{chunk}); }

  std::vector<SearchHit> search(const EmbeddingVector& query, std::size_t k) const {
    if (k == 0) fail(ErrorKind::InvalidInput, "k must be >= 1");
    if (query.size() != kDim) fail(ErrorKind::DimensionMismatch, "query vector dimension");
    std::shared_lock lock(mu_);
    if (ids_.empty()) fail(ErrorKind::EmptyIndex, "search on an empty index");

    struct Entry {
      double distance;
      std::size_t row;
    };
    auto worse = [this](const Entry& a, const Entry& b) {
      if (a.distance != b.distance) return a.distance < b.distance;
      return ids_[a.row] < ids_[b.row];
    };
    // Max-heap: top() is the worst of the current best k.
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    const std::size_t keep = std::min(k, ids_.size());
    const double* q = query.data();
    for (std::size_t row = 0; row < ids_.size(); ++row) {
      const float* v = vectors_.data() + row * kDim;
      double d = 0.0;
      for (std::size_t i = 0; i < kDim; ++i) {
        const double t = static_cast<double>(v[i]) - q[i];
        d += t * t;
      }
      Entry e{d, row};
      if (heap.size() < keep) {
        heap.push(e);
      } else if (worse(e, heap.top())) {
        heap.pop();
        heap.push(e);
      }
    }
    std::vector<Entry> best;
    best.reserve(heap.size());
    while (!heap.empty()) {
      best.push_back(heap.top());
      heap.pop();
    }
    std::reverse(best.begin(), best.end());
    std::vector<SearchHit> hits;
    hits.reserve(best.size());
    for (const auto& e : best) hits.push_back(SearchHit{ids_[e.row], meta_[e.row], contents_[e.row], e.distance});
    return hits;
  }

  /// Stored vector for `row`, widened back to double.
  EmbeddingVector vector_at(std::size_t row) const {
    std::shared_lock lock(mu_);
    if (row >= ids_.size()) fail(ErrorKind::NotFound, "row " + std::to_string(row) + " out of range");
    const float* v = vectors_.data() + row * kDim;
    return EmbeddingVector(std::vector<double>(v, v + kDim));
  }

  std::string chunk_id_at(std::size_t row) const {
    std::shared_lock lock(mu_);
    if (row >= ids_.size()) fail(ErrorKind::NotFound, "row " + std::to_string(row) + " out of range");
    return ids_[row];
  }

  /// Writes `vectors.bin` and `meta.jsonl` under `dir`.
  void save(const std::filesystem::path& dir) const {
    std::shared_lock lock(mu_);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create index directory " + dir.string() + ": " + ec.message());

    std::string payload;
    payload.reserve(vectors_.size() * 4);
    for (float f : vectors_) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, sizeof bits);
      detail::put_le(payload, bits);
    }
    std::string meta;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      meta += detail::meta_to_json(ids_[i], meta_[i], contents_[i]).dump(-1, ' ', false,
                                                                           nlohmann::json::error_handler_t::replace);
      meta += '\n';
    }
    std::string header(detail::kMagic.begin(), detail::kMagic.end());
    detail::put_le(header, detail::kFormatVersion);
    detail::put_le(header, static_cast<std::uint32_t>(kDim));
    detail::put_le(header, static_cast<std::uint64_t>(ids_.size()));
    detail::put_le(header, detail::checksum(payload, meta));

    write_atomically(dir / "vectors.bin", header + payload);
    write_atomically(dir / "meta.jsonl", meta);
  }

  static VectorIndex load(const std::filesystem::path& dir) {
    const std::string bin = slurp(dir / "vectors.bin");
    const std::string meta = slurp(dir / "meta.jsonl");
    if (bin.size() < detail::kHeaderBytes) fail(ErrorKind::CorruptIndexFile, "vectors.bin is truncated");
    if (!std::equal(detail::kMagic.begin(), detail::kMagic.end(), bin.begin())) {
      fail(ErrorKind::CorruptIndexFile, "vectors.bin has a bad magic number");
    }
    const auto version = detail::get_le<std::uint32_t>(bin.data() + 4);
    const auto dim = detail::get_le<std::uint32_t>(bin.data() + 8);
    const auto count = detail::get_le<std::uint64_t>(bin.data() + 12);
    const auto sum = detail::get_le<std::uint64_t>(bin.data() + 20);
    if (version != detail::kFormatVersion) {
      fail(ErrorKind::CorruptIndexFile, "unsupported index format version " + std::to_string(version));
    }
    if (dim != kDim) fail(ErrorKind::CorruptIndexFile, "index dimension " + std::to_string(dim));
    if (count > (bin.size() - detail::kHeaderBytes) / (4 * kDim) ||
        bin.size() != detail::kHeaderBytes + count * kDim * 4) {
      fail(ErrorKind::CorruptIndexFile, "vectors.bin size does not match its header");
    }
    const std::string_view payload(bin.data() + detail::kHeaderBytes, bin.size() - detail::kHeaderBytes);
    if (detail::checksum(payload, meta) != sum) fail(ErrorKind::CorruptIndexFile, "index checksum mismatch");

    VectorIndex idx;
    idx.vectors_.resize(count * kDim);
    for (std::size_t i = 0; i < idx.vectors_.size(); ++i) {
      const auto bits = detail::get_le<std::uint32_t>(payload.data() + 4 * i);
      std::memcpy(&idx.vectors_[i], &bits, sizeof bits);
    }
    std::istringstream lines(meta);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        idx.ids_.push_back(j.at("chunk_id").get<std::string>());
        idx.meta_.push_back(ChunkMetadata{Date::parse_iso(j.at("published_date").get<std::string>()),
                                          j.at("title").get<std::string>(), NewsId{j.at("news_id").get<std::int64_t>()}});
        idx.contents_.push_back(j.at("page_content").get<std::string>());
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::CorruptIndexFile, std::string("bad meta.jsonl line: ") + e.what());
      } catch (const Error& e) {
        fail(ErrorKind::CorruptIndexFile, std::string("bad meta.jsonl line: ") + e.what());
      }
      if (!idx.id_set_.insert(idx.ids_.back()).second) {
        fail(ErrorKind::CorruptIndexFile, "duplicate chunk_id " + idx.ids_.back() + " in meta.jsonl");
      }
    }
    if (idx.ids_.size() != count) fail(ErrorKind::CorruptIndexFile, "meta.jsonl row count does not match vectors.bin");
    return idx;
  }

 private:
  static std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(ErrorKind::CorruptIndexFile, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static void write_atomically(const std::filesystem::path& p, const std::string& data) {
    const auto tmp = p.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) fail(ErrorKind::Io, "cannot write " + tmp);
      out.write(data.data(), static_cast<std::streamsize>(data.size()));
      if (!out) fail(ErrorKind::Io, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) fail(ErrorKind::Io, "cannot move " + tmp + " into place: " + ec.message());
  }

  mutable std::shared_mutex mu_;
  std::vector<float> vectors_;
  std::vector<std::string> ids_;
  std::vector<ChunkMetadata> meta_;
  std::vector<std::string> contents_;
  std::unordered_set<std::string> id_set_;
};

}  // namespace scorerag::index
