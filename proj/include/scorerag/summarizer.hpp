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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "scorerag/corpus.hpp"
#include "scorerag/error.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/log.hpp"
#include "scorerag/prompts.hpp"
#include "scorerag/text.hpp"

namespace scorerag::summary {

enum class Grade { Full, Standard, Core, Minimal };

enum class Element { CoreFacts, KeyData, MainQuotes, Background, Impact, BriefBackground };

inline std::string to_string(Grade g) {
  switch (g) {
    case Grade::Full:
      return "FULL";
    case Grade::Standard:
      return "STANDARD";
    case Grade::Core:
      return "CORE";
    case Grade::Minimal:
      return "MINIMAL";
  }
  return "MINIMAL";
}

inline std::string tag(Element e) {
  switch (e) {
    case Element::CoreFacts:
      return "core_facts";
    case Element::KeyData:
      return "key_data";
    case Element::MainQuotes:
      return "main_quotes";
    case Element::Background:
      return "background";
    case Element::Impact:
      return "impact";
    case Element::BriefBackground:
      return "brief_background";
  }
  return "";
}

inline std::string display_name(Element e, prompts::Language lang) {
  const bool zh = lang == prompts::Language::ZhTw;
  switch (e) {
    case Element::CoreFacts:
      return zh ? "核心事實" : "core facts";
    case Element::KeyData:
      return zh ? "關鍵數據" : "key data";
    case Element::MainQuotes:
      return zh ? "主要引述" : "main quotes";
    case Element::Background:
      return zh ? "背景資訊" : "background information";
    case Element::Impact:
      return zh ? "影響評估" : "impact assessment";
    case Element::BriefBackground:
      return zh ? "簡要背景" : "brief background";
  }
  return "";
}

/// A required element is satisfied by itself; full background also
/// satisfies brief background.
inline bool covers(Element have, Element need) {
  return have == need || (have == Element::Background && need == Element::BriefBackground);
}

inline bool covers_all(const std::vector<Element>& have, const std::vector<Element>& need) {
  for (Element n : need) {
    bool ok = false;
    for (Element h : have) ok = ok || covers(h, n);
    if (!ok) return false;
  }
  return true;
}

struct SummaryGrade {
  Grade grade = Grade::Minimal;
  std::vector<Element> required_elements;

  friend bool operator==(const SummaryGrade&, const SummaryGrade&) = default;
};

struct GradeBand {
  Grade grade;
  double lower;  // exclusive, except for the lowest band
  double upper;  // inclusive
  std::vector<Element> elements;
};

inline constexpr double kMinScore = 20.0;
inline constexpr double kMaxScore = 100.0;

/// The single table that decides summary grades:
/// [20,30] MINIMAL, (30,50] CORE, (50,70] STANDARD, (70,100] FULL.
inline const std::array<GradeBand, 4>& grade_table() {
  static const std::array<GradeBand, 4> kTable = {{
      {Grade::Minimal, kMinScore, 30.0, {Element::CoreFacts}},
      {Grade::Core, 30.0, 50.0, {Element::CoreFacts, Element::KeyData}},
      {Grade::Standard, 50.0, 70.0,
       {Element::CoreFacts, Element::KeyData, Element::MainQuotes, Element::BriefBackground}},
      {Grade::Full, 70.0, kMaxScore,
       {Element::CoreFacts, Element::KeyData, Element::MainQuotes, Element::Background, Element::Impact}},
  }};
  return kTable;
}

inline SummaryGrade grade_for(double score) {
  if (!(score >= kMinScore && score <= kMaxScore)) {
    fail(ErrorKind::OutOfRange, "summary grade needs a score in [20, 100], got " + std::to_string(score));
  }
  for (const auto& band : grade_table()) {
    if (score <= band.upper) return SummaryGrade{band.grade, band.elements};
  }
  return SummaryGrade{Grade::Full, grade_table().back().elements};
}

struct GradedSummary {
  NewsId news_id;
  SummaryGrade grade;
  std::string text;
  double source_score = 0.0;
};

struct SummarizerConfig {
  prompts::Language language = prompts::Language::ZhTw;
  double temperature = 0.2;
  std::size_t excerpt_scalars = 200;
};

inline std::string leading_excerpt(std::string_view content, std::size_t max_scalars) {
  const std::u32string u = text::decode(text::trim(content));
  if (u.size() <= max_scalars) return text::encode(u);
  return text::encode(std::u32string_view(u).substr(0, max_scalars)) + "…";
}

/// One LLM call with the grade's element list and the formal-news rules. A
/// blank reply is retried once. After that the stored summary is used, and
/// if that is blank too, the first excerpt_scalars characters of content.
inline GradedSummary summarize(llm::LlmGateway& llm, const NewsRecord& article, const SummaryGrade& grade,
                               double source_score, const SummarizerConfig& config,
                               std::vector<std::string>& warnings) {
  if (text::is_blank(article.content)) fail(ErrorKind::InvalidInput, "news " + article.news_id.str() + " has no content");
  std::vector<std::string> names;
  for (Element e : grade.required_elements) names.push_back(display_name(e, config.language));
  const auto prompt = prompts::summarize(config.language, to_string(grade.grade), names,
                                         article.published_date.iso(), article.title, article.content);
  llm::ChatRequest req{prompt.system, prompt.user, config.temperature, std::nullopt, llm::tags::kSummarize};
  GradedSummary out{article.news_id, grade, "", source_score};
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply = text::trim(llm.complete(req));
    if (!reply.empty()) {
      out.text = std::move(reply);
      return out;
    }
  }
  std::string msg = "news " + article.news_id.str() + ": summarizer returned empty text twice; ";
  if (!text::is_blank(article.summary)) {
    out.text = text::trim(article.summary);
    msg += "using the stored summary";
  } else {
    out.text = leading_excerpt(article.content, config.excerpt_scalars);
    msg += "stored summary is empty too, using the opening of the article";
  }
  log::warn(msg);
  warnings.push_back(std::move(msg));
  return out;
}

}  // namespace scorerag::summary
