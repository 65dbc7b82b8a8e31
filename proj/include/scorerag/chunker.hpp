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

#include <cstddef>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "scorerag/corpus.hpp"
#include "scorerag/error.hpp"
#include "scorerag/log.hpp"
#include "scorerag/text.hpp"

// Recursive character splitting with overlap.
//
// The text is split on the first separator (in priority order) that occurs
// in it, each separator staying attached to the start of the piece that
// follows it. Pieces shorter than chunk_size are greedily merged into chunks
// of at most chunk_size scalars; when a chunk is emitted, pieces are popped
// from its front until at most chunk_overlap scalars remain, and those carry
// over into the next chunk. Pieces that are still too long are split again
// with the remaining separators; the terminal "" separator splits into single
// characters, which hard-cuts separator-free runs. Emitted chunks are
// whitespace-trimmed and empty ones are dropped.

namespace scorerag::chunking {

struct SplitterConfig {
  std::size_t chunk_size = 500;
  std::size_t chunk_overlap = 50;
  std::vector<std::string> separators = {"\n\n", "\n", " ", ""};
};

inline void validate(const SplitterConfig& c) {
  if (c.chunk_size == 0) fail(ErrorKind::InvalidConfig, "chunk_size must be positive");
  if (c.chunk_overlap >= c.chunk_size) {
    fail(ErrorKind::InvalidConfig, "chunk_overlap (" + std::to_string(c.chunk_overlap) +
                                       ") must be smaller than chunk_size (" +
                                       std::to_string(c.chunk_size) + ")");
  }
  if (c.separators.empty() || !c.separators.back().empty()) {
    fail(ErrorKind::InvalidConfig, "separators must end with the empty string");
  }
}

/// Half-open scalar range [begin, end) into the decoded source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

namespace detail {

class RecursiveSplitter {
 public:
  RecursiveSplitter(std::u32string_view text, const SplitterConfig& config)
      : text_(text), config_(config) {
    separators_.reserve(config.separators.size());
    for (const auto& s : config.separators) separators_.push_back(text::decode(s));
  }

  std::vector<Span> run() {
    std::vector<Span> out;
    if (!text_.empty()) split(Span{0, text_.size()}, 0, out);
    return out;
  }

 private:
  bool contains(Span range, const std::u32string& sep) const {
    return text_.substr(range.begin, range.size()).find(sep) != std::u32string_view::npos;
  }

  // Piece boundaries sit at the start of every non-overlapping occurrence.
  std::vector<Span> pieces(Span range, const std::u32string& sep) const {
    std::vector<Span> out;
    if (sep.empty()) {
      for (std::size_t i = range.begin; i < range.end; ++i) out.push_back({i, i + 1});
      return out;
    }
    const auto view = text_.substr(range.begin, range.size());
    std::size_t start = 0;
    std::size_t pos = view.find(sep);
    while (pos != std::u32string_view::npos) {
      if (pos > start) out.push_back({range.begin + start, range.begin + pos});
      start = pos;
      pos = view.find(sep, pos + sep.size());
    }
    if (start < view.size()) out.push_back({range.begin + start, range.end});
    return out;
  }

  void split(Span range, std::size_t first_sep, std::vector<Span>& out) const {
    std::size_t chosen = separators_.size() - 1;
    for (std::size_t i = first_sep; i < separators_.size(); ++i) {
      if (separators_[i].empty() || contains(range, separators_[i])) {
        chosen = i;
        break;
      }
    }
    const bool terminal = separators_[chosen].empty();
    std::vector<Span> good;
    for (const Span& piece : pieces(range, separators_[chosen])) {
      if (piece.size() < config_.chunk_size) {
        good.push_back(piece);
        continue;
      }
      if (!good.empty()) {
        merge(good, out);
        good.clear();
      }
      if (terminal) {
        emit(piece, out);
      } else {
        split(piece, chosen + 1, out);
      }
    }
    if (!good.empty()) merge(good, out);
  }

  void merge(const std::vector<Span>& pieces, std::vector<Span>& out) const {
    std::deque<Span> window;
    std::size_t total = 0;
    for (const Span& piece : pieces) {
      const std::size_t len = piece.size();
      if (total + len > config_.chunk_size && !window.empty()) {
        emit(Span{window.front().begin, window.back().end}, out);
        while (total > config_.chunk_overlap || (total + len > config_.chunk_size && total > 0)) {
          total -= window.front().size();
          window.pop_front();
        }
      }
      window.push_back(piece);
      total += len;
    }
    if (!window.empty()) emit(Span{window.front().begin, window.back().end}, out);
  }

  void emit(Span s, std::vector<Span>& out) const {
    while (s.begin < s.end && text::is_space(text_[s.begin])) ++s.begin;
    while (s.end > s.begin && text::is_space(text_[s.end - 1])) --s.end;
    if (s.begin < s.end) out.push_back(s);
  }

  std::u32string_view text_;
  const SplitterConfig& config_;
  std::vector<std::u32string> separators_;
};

}  // namespace detail

/// Chunk positions within the decoded text, in order.
inline std::vector<Span> split_spans(std::u32string_view text, const SplitterConfig& config) {
  validate(config);
  return detail::RecursiveSplitter(text, config).run();
}

/// Splits UTF-8 text into chunks of at most chunk_size Unicode scalars.
inline std::vector<std::string> split(std::string_view text, const SplitterConfig& config) {
  const std::u32string decoded = text::decode(text);
  std::vector<std::string> out;
  for (const Span& s : split_spans(decoded, config)) {
    out.push_back(text::encode(std::u32string_view(decoded).substr(s.begin, s.size())));
  }
  return out;
}

struct Chunk {
  std::string chunk_id;  // "<news_id>#<ordinal>"
  NewsId news_id;
  std::string text;
  std::size_t ordinal = 0;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

inline std::string make_chunk_id(NewsId id, std::size_t ordinal) {
  return id.str() + "#" + std::to_string(ordinal);
}

inline std::vector<Chunk> chunk_article(const NewsRecord& record, const SplitterConfig& config) {
  validate(config);
  std::vector<Chunk> out;
  if (text::is_blank(record.content)) {
    log::warn("news " + record.news_id.str() + " has empty content; no chunks produced");
    return out;
  }
  auto texts = split(record.content, config);
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out.push_back(Chunk{make_chunk_id(record.news_id, i), record.news_id, std::move(texts[i]), i});
  }
  return out;
}

}  // namespace scorerag::chunking
