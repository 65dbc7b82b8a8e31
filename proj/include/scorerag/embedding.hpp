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

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scorerag/error.hpp"
#include "scorerag/text.hpp"

namespace scorerag::embedding {

inline constexpr std::size_t kDim = 1024;

class EmbeddingVector {
 public:
  EmbeddingVector() : values_(kDim, 0.0) {}

  explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() != kDim) {
      fail(ErrorKind::DimensionMismatch,
           "expected " + std::to_string(kDim) + " components, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        fail(ErrorKind::InvalidInput, "embedding component " + std::to_string(i) + " is not finite");
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const double* data() const { return values_.data(); }

  double norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [-1, 1).
constexpr double unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

inline constexpr std::uint64_t kMockSeed = 0x5C0E7A6ULL;

inline void add_feature(std::vector<double>& acc, std::uint64_t h, double weight) {
  const std::size_t slot = static_cast<std::size_t>(h % kDim);
  acc[slot] += ((h >> 32) & 1U) ? weight : -weight;
}

}  // namespace detail

/// Deterministic stand-in for a sentence embedding model.
///
/// Signed feature hashing of character unigrams and bigrams gives texts
/// that share characters a smaller distance, which keeps demo retrieval
/// sensible. A per-text pseudo-random component seeded from the whole text
/// separates texts with identical character statistics. The result is
/// L2-normalized, so squared-L2 distances lie in [0, 4].
inline EmbeddingVector mock_embed(std::string_view text) {
  if (text.empty()) fail(ErrorKind::InvalidInput, "cannot embed empty text");
  std::vector<double> acc(kDim, 0.0);
  const std::u32string u = text::decode(text);
  auto scalar_hash = [](std::u32string_view s, std::uint64_t salt) {
    std::uint64_t h = detail::kMockSeed ^ salt;
    for (char32_t c : s) {
      h ^= static_cast<std::uint64_t>(c);
      h *= 0x100000001b3ULL;
    }
    std::uint64_t st = h;
    return detail::splitmix64(st);
  };
  const std::u32string_view uv(u);
  for (std::size_t i = 0; i < uv.size(); ++i) {
    if (text::is_space(uv[i])) continue;
    detail::add_feature(acc, scalar_hash(uv.substr(i, 1), 1), 1.0);
    if (i + 1 < uv.size() && !text::is_space(uv[i + 1])) {
      detail::add_feature(acc, scalar_hash(uv.substr(i, 2), 2), 1.5);
    }
  }
  double feature_norm = 0.0;
  for (double v : acc) feature_norm += v * v;
  feature_norm = std::sqrt(feature_norm);

  std::uint64_t state = text::fnv1a64(text, text::fnv1a64("mock-embed", detail::kMockSeed));
  const double noise_scale = feature_norm > 0.0 ? 0.15 * feature_norm / std::sqrt(static_cast<double>(kDim)) : 1.0;
  for (double& v : acc) v += noise_scale * detail::unit(detail::splitmix64(state));

  double norm = 0.0;
  for (double v : acc) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : acc) v /= norm;
  return EmbeddingVector(std::move(acc));
}

enum class TextRole { Query, Passage };

struct BackendConfig {
  std::string endpoint_url;
  std::string model_name = "multilingual-e5-large";
  std::size_t batch_size = 1000;
  std::optional<std::string> device_hint;
  // Prepended before embedding, e.g. "query: " / "passage: " for e5 models.
  std::string query_prefix;
  std::string passage_prefix;
  double timeout_secs = 60.0;
};

inline void validate(const BackendConfig& c) {
  if (c.batch_size < 1) fail(ErrorKind::InvalidConfig, "embedding.batch_size must be >= 1");
  if (!(c.timeout_secs > 0.0)) fail(ErrorKind::InvalidConfig, "embedding.timeout_secs must be positive");
}

/// One backend round trip per embed() call.
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
  virtual std::string name() const = 0;
};

class MockBackend final : public EmbeddingBackend {
 public:
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    {
      std::lock_guard lock(mu_);
      call_sizes_.push_back(texts.size());
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(mock_embed(t));
    return out;
  }

  std::string name() const override { return "mock"; }

  std::size_t calls() const {
    std::lock_guard lock(mu_);
    return call_sizes_.size();
  }

  std::vector<std::size_t> call_sizes() const {
    std::lock_guard lock(mu_);
    return call_sizes_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<std::size_t> call_sizes_;
};

/// Embeds `texts` in order, issuing sub-batches of at most batch_size.
inline std::vector<EmbeddingVector> embed_batch(EmbeddingBackend& backend, const std::vector<std::string>& texts,
                                                const BackendConfig& config, TextRole role = TextRole::Passage) {
  validate(config);
  if (texts.empty()) fail(ErrorKind::InvalidInput, "embed_batch needs at least one text");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (texts[i].empty()) fail(ErrorKind::InvalidInput, "text " + std::to_string(i) + " is empty");
  }
  const std::string& prefix = role == TextRole::Query ? config.query_prefix : config.passage_prefix;
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += config.batch_size) {
    const std::size_t end = std::min(texts.size(), start + config.batch_size);
    std::vector<std::string> batch;
    batch.reserve(end - start);
    for (std::size_t i = start; i < end; ++i) batch.push_back(prefix + texts[i]);
    auto vectors = backend.embed(batch);
    if (vectors.size() != batch.size()) {
      fail(ErrorKind::DimensionMismatch, backend.name() + " returned " + std::to_string(vectors.size()) +
                                             " vectors for " + std::to_string(batch.size()) + " texts");
    }
    for (auto& v : vectors) out.push_back(std::move(v));
  }
  return out;
}

inline EmbeddingVector embed_query(EmbeddingBackend& backend, const std::string& query, const BackendConfig& config) {
  return embed_batch(backend, {query}, config, TextRole::Query).front();
}

}  // namespace scorerag::embedding
