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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "scorerag/chunker.hpp"
#include "splitter_oracle.hpp"
#include "test_util.hpp"

using namespace scorerag;
using chunking::SplitterConfig;

namespace {

SplitterConfig config(std::size_t size, std::size_t overlap) {
  SplitterConfig c;
  c.chunk_size = size;
  c.chunk_overlap = overlap;
  return c;
}

}  // namespace

TEST(Split, EmptyInputYieldsNothing) { EXPECT_TRUE(chunking::split("", config(10, 2)).empty()); }

TEST(Split, ShortTextIsSingleChunk) {
  EXPECT_EQ(chunking::split("美中官員會晤", config(10, 2)), (std::vector<std::string>{"美中官員會晤"}));
}

TEST(Split, ParagraphsFirst) {
  SplitterConfig c = config(9, 0);
  EXPECT_EQ(chunking::split("aaaa\n\nbbbb\n\ncccc", c), (std::vector<std::string>{"aaaa", "bbbb", "cccc"}));
  EXPECT_EQ(chunking::split("aaaa\n\nbbbb\n\ncccc", c),
            test::oracle_split("aaaa\n\nbbbb\n\ncccc", 9, 0, c.separators));
}

TEST(Split, FallsBackToWordsThenCharacters) {
  // No paragraph or line separators: words are the split points, and the
  // separator stays attached to the front of the following word.
  EXPECT_EQ(chunking::split("aa bb cc dd", config(5, 0)), (std::vector<std::string>{"aa bb", "cc", "dd"}));
  EXPECT_EQ(chunking::split("aa bb cc dd", config(6, 0)), (std::vector<std::string>{"aa bb", "cc dd"}));
  // Separator-free run: hard cut at chunk_size with overlap.
  EXPECT_EQ(chunking::split("一二三四五六七八九十", config(4, 1)),
            (std::vector<std::string>{"一二三四", "四五六七", "七八九十"}));
}

TEST(Split, InvalidConfig) {
  EXPECT_ERROR_KIND(chunking::split("x", config(10, 10)), ErrorKind::InvalidConfig);
  EXPECT_ERROR_KIND(chunking::split("x", config(10, 11)), ErrorKind::InvalidConfig);
  SplitterConfig c = config(10, 1);
  c.separators = {"\n\n", " "};
  EXPECT_ERROR_KIND(chunking::split("x", c), ErrorKind::InvalidConfig);
}

TEST(Split, LengthIsCountedInScalarsNotBytes) {
  const std::string text(30, 'x');
  const std::string cjk = [] {
    std::string s;
    for (int i = 0; i < 30; ++i) s += "字";
    return s;
  }();
  const auto a = chunking::split(text, config(10, 0));
  const auto b = chunking::split(cjk, config(10, 0));
  ASSERT_EQ(a.size(), 3u);
  ASSERT_EQ(b.size(), 3u);
  for (const auto& c : b) EXPECT_EQ(text::scalar_count(c), 10u);
}

TEST(Split, MatchesReferenceSplitterOnRandomStrings) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string s = test::random_mixed_text(rng, 600);
    const std::size_t size = 4 + rng() % 120;
    const std::size_t overlap = rng() % 3 == 0 ? 0 : rng() % size;
    const SplitterConfig c = config(size, overlap);
    ASSERT_EQ(chunking::split(s, c), test::oracle_split(s, size, overlap, c.separators))
        << "trial " << trial << " size " << size << " overlap " << overlap;
  }
}

TEST(Split, PropertiesHoldOnRandomStrings) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string s = test::random_mixed_text(rng, 800);
    const std::size_t size = 8 + rng() % 200;
    const std::size_t overlap = rng() % size;
    const auto chunks = chunking::split(s, config(size, overlap));
    const auto report = test::check_chunk_properties(s, chunks, size, overlap);
    EXPECT_TRUE(report.ok) << report.message;
  }
}

TEST(Split, Deterministic) {
  std::mt19937_64 rng(5);
  const std::string s = test::random_mixed_text(rng, 2000);
  EXPECT_EQ(chunking::split(s, config(100, 10)), chunking::split(s, config(100, 10)));
}

TEST(Split, SpansOverlapByAtMostChunkOverlap) {
  std::mt19937_64 rng(3000);
  const std::string s = test::random_mixed_text(rng, 3000, 3000);
  const std::u32string u = text::decode(s);
  ASSERT_GE(u.size(), 3000u);
  const auto spans = chunking::split_spans(u, config(500, 50));
  ASSERT_GE(spans.size(), 6u);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    EXPECT_LE(spans[i].size(), 500u);
    if (i == 0) continue;
    EXPECT_GE(spans[i].begin, spans[i - 1].begin);
    const std::size_t shared = spans[i - 1].end > spans[i].begin ? spans[i - 1].end - spans[i].begin : 0;
    EXPECT_LE(shared, 50u);
  }
}

TEST(ChunkArticle, WrapsChunksWithIds) {
  const NewsRecord r = test::make_record(2384857, "2024-02-01", "標題", "一段短內容。");
  const auto chunks = chunking::chunk_article(r, SplitterConfig{});
  ASSERT_EQ(chunks.size(), 1u);
  EXPECT_EQ(chunks[0].chunk_id, "2384857#0");
  EXPECT_EQ(chunks[0].news_id, NewsId{2384857});
  EXPECT_EQ(chunks[0].ordinal, 0u);
  EXPECT_EQ(chunks[0].text, "一段短內容。");
}

TEST(ChunkArticle, EmptyContentWarnsAndYieldsNothing) {
  std::vector<std::string> warnings;
  log::set_sink([&](log::Level, std::string_view m) { warnings.emplace_back(m); });
  NewsRecord r = test::make_record(1, "2024-02-01", "標題", "x");
  r.content.clear();
  EXPECT_TRUE(chunking::chunk_article(r, SplitterConfig{}).empty());
  log::set_sink({});
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("empty content"), std::string::npos);
}

TEST(ChunkArticle, LongArticleRespectsBoundsAndContiguousOrdinals) {
  std::mt19937_64 rng(1);
  const NewsRecord r = test::make_record(77, "2022-01-01", "t", test::random_mixed_text(rng, 3000, 3000));
  const auto chunks = chunking::chunk_article(r, config(500, 50));
  ASSERT_GT(chunks.size(), 1u);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    EXPECT_EQ(chunks[i].ordinal, i);
    EXPECT_EQ(chunks[i].chunk_id, "77#" + std::to_string(i));
    EXPECT_LE(text::scalar_count(chunks[i].text), 500u);
  }
  EXPECT_ERROR_KIND(chunking::chunk_article(r, config(50, 50)), ErrorKind::InvalidConfig);
}

TEST(SplitOracle, PropertyCheckerRejectsBrokenChunkings) {
  const std::string s = "aaaa\n\nbbbb\n\ncccc";
  EXPECT_TRUE(test::check_chunk_properties(s, {"aaaa", "bbbb", "cccc"}, 9, 0).ok);
  EXPECT_FALSE(test::check_chunk_properties(s, {"aaaa", "cccc"}, 9, 0).ok);
  EXPECT_FALSE(test::check_chunk_properties(s, {"bbbb", "aaaa", "cccc"}, 9, 0).ok);
  EXPECT_FALSE(test::check_chunk_properties(s, {"aaaa\n\nbbbb", "cccc"}, 9, 0).ok);
  EXPECT_FALSE(test::check_chunk_properties(s, {"aaaa\n\nbbbb", "bbbb\n\ncccc"}, 10, 3).ok);
  EXPECT_TRUE(test::check_chunk_properties(s, {"aaaa\n\nbbbb", "bbbb\n\ncccc"}, 10, 4).ok);
}
