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

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scorerag/consistency.hpp"
#include "scorerag/error.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/log.hpp"
#include "scorerag/prompts.hpp"
#include "scorerag/summarizer.hpp"
#include "scorerag/text.hpp"

namespace scorerag::generation {

struct ReferenceBlock {
  int ref_number = 0;
  Date published_date;
  std::string title;
  double consistency_score = 0.0;
  std::string summary_text;

  friend bool operator==(const ReferenceBlock&, const ReferenceBlock&) = default;
};

inline std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", score);
  return buf;
}

inline double round2(double score) { return std::round(score * 100.0) / 100.0; }

/// Pairs each summary with its scored article, in reranked order, and
/// numbers the blocks from 1.
inline std::vector<ReferenceBlock> build_context(const std::vector<summary::GradedSummary>& summaries,
                                                 const std::vector<scoring::ScoredArticle>& scored) {
  if (summaries.size() != scored.size()) {
    fail(ErrorKind::AlignmentError, std::to_string(summaries.size()) + " summaries for " +
                                        std::to_string(scored.size()) + " scored articles");
  }
  std::vector<ReferenceBlock> out;
  out.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const NewsRecord& rec = scored[i].article.record;
    if (summaries[i].news_id != rec.news_id) {
      fail(ErrorKind::AlignmentError, "summary " + std::to_string(i) + " is for news " + summaries[i].news_id.str() +
                                          " but the scored article is " + rec.news_id.str());
    }
    out.push_back(ReferenceBlock{static_cast<int>(i) + 1, rec.published_date, rec.title, scored[i].mean_score,
                                 summaries[i].text});
  }
  return out;
}

inline std::string render(const ReferenceBlock& b, prompts::Language lang) {
  return prompts::reference_block(lang, b.ref_number, b.published_date.iso(), b.title,
                                  format_score(b.consistency_score), b.summary_text);
}

// ---------------------------------------------------------------------------
// Citation scanning

struct Citation {
  std::size_t position = 0;  // byte offset of the opening parenthesis
  int ref_number = 0;

  friend bool operator==(const Citation&, const Citation&) = default;
};

struct CitationCheck {
  std::vector<Citation> citations;
  std::vector<std::string> warnings;
};

namespace detail {

struct RawCitation {
  std::size_t position;
  long long number;
};

inline bool ascii_ieq(std::u32string_view a, std::string_view lower) {
  if (a.size() != lower.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char32_t c = a[i];
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c != static_cast<char32_t>(lower[i])) return false;
  }
  return true;
}

inline bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == 0x3000 || c == 0xA0; }

inline int digit_value(char32_t c) {
  if (c >= U'0' && c <= U'9') return static_cast<int>(c - U'0');
  if (c >= 0xFF10 && c <= 0xFF19) return static_cast<int>(c - 0xFF10);
  return -1;
}

/// Finds "(Reference N)" tokens. Either parenthesis may be ASCII or
/// full-width, "reference" matches case-insensitively, spaces are allowed
/// around the number and digits may be full-width.
inline std::vector<RawCitation> scan(std::string_view body) {
  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;
  for (std::size_t pos = 0; pos < body.size();) {
    offsets.push_back(pos);
    cps.push_back(text::next_scalar(body, pos));
  }
  const std::u32string_view all(cps.data(), cps.size());
  std::vector<RawCitation> out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] != U'(' && cps[i] != 0xFF08) continue;
    std::size_t j = i + 1;
    while (j < cps.size() && is_space(cps[j])) ++j;
    if (!ascii_ieq(all.substr(j, 9), "reference")) continue;
    j += 9;
    while (j < cps.size() && is_space(cps[j])) ++j;
    long long n = 0;
    std::size_t digits = 0;
    for (; j < cps.size() && digit_value(cps[j]) >= 0; ++j, ++digits) {
      n = std::min(n * 10 + digit_value(cps[j]), 1'000'000'000LL);
    }
    if (digits == 0) continue;
    while (j < cps.size() && is_space(cps[j])) ++j;
    if (j >= cps.size() || (cps[j] != U')' && cps[j] != 0xFF09)) continue;
    out.push_back(RawCitation{offsets[i], n});
    i = j;
  }
  return out;
}

}  // namespace detail

/// In-range citations in body order. Warnings name each out-of-range
/// number once, in order of first appearance, then every reference that is
/// never cited.
inline CitationCheck validate_citations(std::string_view body, int ref_count) {
  if (ref_count < 0) fail(ErrorKind::InvalidInput, "ref_count must be >= 0");
  CitationCheck out;
  std::set<long long> dangling_seen;
  std::set<int> cited;
  for (const auto& raw : detail::scan(body)) {
    if (raw.number >= 1 && raw.number <= ref_count) {
      out.citations.push_back(Citation{raw.position, static_cast<int>(raw.number)});
      cited.insert(static_cast<int>(raw.number));
    } else if (dangling_seen.insert(raw.number).second) {
      out.warnings.push_back("dangling citation " + std::to_string(raw.number));
    }
  }
  for (int r = 1; r <= ref_count; ++r) {
    if (!cited.count(r)) out.warnings.push_back("reference " + std::to_string(r) + " uncited");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generation

inline constexpr const char* kNoReferencesWarning =
    "no grounded references: the article was generated from the query alone";

struct GeneratorConfig {
  prompts::Language language = prompts::Language::ZhTw;
  double temperature = 0.7;
  std::optional<int> max_tokens;
};

struct GeneratedArticle {
  std::string query;
  std::string body;
  std::vector<ReferenceBlock> references;
  std::vector<Citation> citations;
  std::vector<std::string> warnings;
};

inline prompts::Prompt build_prompt(const std::string& query, const std::vector<ReferenceBlock>& refs,
                                    prompts::Language lang) {
  std::vector<std::string> blocks;
  blocks.reserve(refs.size());
  for (const auto& r : refs) blocks.push_back(render(r, lang));
  return prompts::generate(lang, query, blocks);
}

inline GeneratedArticle generate(llm::LlmGateway& llm, const std::string& query, const std::vector<ReferenceBlock>& refs,
                                 const GeneratorConfig& config = {}) {
  if (text::is_blank(query)) fail(ErrorKind::InvalidInput, "query must be non-empty");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].ref_number != static_cast<int>(i) + 1) {
      fail(ErrorKind::AlignmentError, "reference numbers must run 1..N in order");
    }
  }
  GeneratedArticle out{query, "", refs, {}, {}};
  if (refs.empty()) {
    log::warn(kNoReferencesWarning);
    out.warnings.push_back(kNoReferencesWarning);
  }
  const auto prompt = build_prompt(query, refs, config.language);
  llm::ChatRequest req{prompt.system, prompt.user, config.temperature, config.max_tokens, llm::tags::kGenerate};
  try {
    out.body = text::trim(llm.complete(req));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BackendUnreachable || e.kind() == ErrorKind::BackendRefused ||
        e.kind() == ErrorKind::Timeout) {
      fail(ErrorKind::GenerationBackendError, std::string("generation failed: ") + e.what());
    }
    throw;
  }
  if (out.body.empty()) fail(ErrorKind::GenerationBackendError, "generation backend returned an empty article");
  auto check = validate_citations(out.body, static_cast<int>(refs.size()));
  out.citations = std::move(check.citations);
  for (auto& w : check.warnings) out.warnings.push_back(std::move(w));
  return out;
}

inline nlohmann::ordered_json to_json(const ReferenceBlock& r) {
  nlohmann::ordered_json j;
  j["ref_number"] = r.ref_number;
  j["date"] = r.published_date.iso();
  j["title"] = r.title;
  j["score"] = round2(r.consistency_score);
  j["summary"] = r.summary_text;
  return j;
}

inline nlohmann::ordered_json to_json(const GeneratedArticle& a) {
  nlohmann::ordered_json j;
  j["query"] = a.query;
  j["body"] = a.body;
  j["references"] = nlohmann::ordered_json::array();
  for (const auto& r : a.references) j["references"].push_back(to_json(r));
  j["citations"] = nlohmann::ordered_json::array();
  for (const auto& c : a.citations) j["citations"].push_back({{"position", c.position}, {"ref_number", c.ref_number}});
  j["warnings"] = a.warnings;
  return j;
}

}  // namespace scorerag::generation
