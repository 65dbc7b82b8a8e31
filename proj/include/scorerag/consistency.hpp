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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scorerag/error.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/log.hpp"
#include "scorerag/prompts.hpp"
#include "scorerag/retrieval.hpp"
#include "scorerag/text.hpp"

namespace scorerag::scoring {

enum class Band { High, Strong, Somewhat, Not };

inline std::string to_string(Band b) {
  switch (b) {
    case Band::High:
      return "HIGH";
    case Band::Strong:
      return "STRONG";
    case Band::Somewhat:
      return "SOMEWHAT";
    case Band::Not:
      return "NOT";
  }
  return "NOT";
}

/// Closed lower bounds: [90,100] HIGH, [70,90) STRONG, [50,70) SOMEWHAT,
/// [0,50) NOT.
inline Band band_for(double mean) {
  if (mean >= 90.0) return Band::High;
  if (mean >= 70.0) return Band::Strong;
  if (mean >= 50.0) return Band::Somewhat;
  return Band::Not;
}

struct ScoringConfig {
  std::size_t num_samples = 3;
  double threshold = 20.0;
  double temperature = 0.7;
  prompts::Language language = prompts::Language::ZhTw;
};

inline void validate(const ScoringConfig& c) {
  if (c.num_samples < 1) fail(ErrorKind::InvalidConfig, "scoring.num_samples must be >= 1");
  if (!(c.threshold >= 0.0 && c.threshold <= 100.0)) {
    fail(ErrorKind::InvalidConfig, "scoring.threshold must be within [0, 100]");
  }
  if (!(c.temperature >= 0.0) || !std::isfinite(c.temperature)) {
    fail(ErrorKind::InvalidConfig, "scoring.temperature must be >= 0");
  }
}

/// First integer in [0, 100] in the reply. Full-width digits count. Numbers
/// with a non-zero fractional part, negative numbers and numbers outside
/// the range are skipped, so "Score: 92/100" gives 92 and "2024年 80分"
/// gives 80.
inline std::optional<int> parse_score(std::string_view reply) {
  const std::string s = text::fold_fullwidth(reply);
  auto digit = [&](std::size_t k) { return k < s.size() && s[k] >= '0' && s[k] <= '9'; };
  std::size_t i = 0;
  while (i < s.size()) {
    if (!digit(i)) {
      ++i;
      continue;
    }
    const bool negative = i > 0 && s[i - 1] == '-' && !digit(i - 2);
    long long value = 0;
    while (digit(i)) {
      value = std::min(value * 10 + (s[i] - '0'), 1000LL);
      ++i;
    }
    bool fractional = false;
    if (i < s.size() && s[i] == '.' && digit(i + 1)) {
      for (++i; digit(i); ++i) fractional = fractional || s[i] != '0';
    }
    if (!negative && !fractional && value <= 100) return static_cast<int>(value);
  }
  return std::nullopt;
}

inline int parse_score_or_throw(std::string_view reply) {
  if (auto v = parse_score(reply)) return *v;
  fail(ErrorKind::UnparseableScore, "judge reply has no integer in [0, 100]: \"" + std::string(reply.substr(0, 200)) + "\"");
}

/// One relevance judgment of an article's date, title and summary against
/// the query. An unparseable reply is retried once; a second failure counts
/// as 0 and adds a warning.
inline int judge_once(llm::LlmGateway& llm, const std::string& query, const NewsRecord& article,
                      const ScoringConfig& config, std::vector<std::string>& warnings) {
  if (text::is_blank(article.title)) fail(ErrorKind::InvalidInput, "article title must be non-empty");
  const auto prompt =
      prompts::judge(config.language, query, article.published_date.iso(), article.title, article.summary);
  llm::ChatRequest req{prompt.system, prompt.user, config.temperature, std::nullopt, llm::tags::kJudge};
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return parse_score_or_throw(llm.complete(req));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnparseableScore) throw;
      if (attempt == 1) {
        std::string msg = "news " + article.news_id.str() + ": judge reply unparseable twice, scored 0";
        log::warn(msg);
        warnings.push_back(std::move(msg));
      }
    }
  }
  return 0;
}

struct ScoredArticle {
  retrieval::RetrievedArticle article;
  std::vector<int> raw_scores;
  double mean_score = 0.0;
  Band band = Band::Not;
};

inline double mean_of(const std::vector<int>& xs) {
  long long sum = 0;
  for (int x : xs) sum += x;
  return static_cast<double>(sum) / static_cast<double>(xs.size());
}

/// num_samples independent judgments, averaged. Calls run one after another
/// so a scripted judge sees a fixed call order.
inline ScoredArticle score_article(llm::LlmGateway& llm, const std::string& query,
                                   const retrieval::RetrievedArticle& article, const ScoringConfig& config,
                                   std::vector<std::string>& warnings) {
  validate(config);
  ScoredArticle out{article, {}, 0.0, Band::Not};
  out.raw_scores.reserve(config.num_samples);
  for (std::size_t i = 0; i < config.num_samples; ++i) {
    out.raw_scores.push_back(judge_once(llm, query, article.record, config, warnings));
  }
  out.mean_score = mean_of(out.raw_scores);
  out.band = band_for(out.mean_score);
  return out;
}

/// Ordering used after filtering: mean descending, then newer first, then
/// smaller news_id.
inline bool rerank_before(const ScoredArticle& a, const ScoredArticle& b) {
  if (a.mean_score != b.mean_score) return a.mean_score > b.mean_score;
  if (a.article.record.published_date != b.article.record.published_date) {
    return a.article.record.published_date > b.article.record.published_date;
  }
  return a.article.record.news_id < b.article.record.news_id;
}

struct FilterResult {
  std::vector<ScoredArticle> kept;
  std::vector<ScoredArticle> dropped;
};

/// Drops articles whose mean is strictly below the threshold and sorts the
/// survivors with rerank_before. Dropped articles keep their input order.
inline FilterResult partition_by_threshold(std::vector<ScoredArticle> scored, const ScoringConfig& config) {
  validate(config);
  FilterResult out;
  for (auto& s : scored) {
    (s.mean_score < config.threshold ? out.dropped : out.kept).push_back(std::move(s));
  }
  std::stable_sort(out.kept.begin(), out.kept.end(), rerank_before);
  return out;
}

inline std::vector<ScoredArticle> filter_and_rerank(std::vector<ScoredArticle> scored, const ScoringConfig& config) {
  return partition_by_threshold(std::move(scored), config).kept;
}

}  // namespace scorerag::scoring
