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

// Prompt templates, version 1. Traditional Chinese is the default output
// language; English exists for debugging against English-only models.
// Changing any text here changes stub-mode golden outputs.

#include <string>
#include <string_view>
#include <vector>

#include "scorerag/error.hpp"

namespace scorerag::prompts {

inline constexpr const char* kVersion = "v1";

enum class Language { ZhTw, En };

inline Language parse_language(std::string_view s) {
  if (s == "zh-TW" || s == "zh-tw" || s == "zh_TW") return Language::ZhTw;
  if (s == "en") return Language::En;
  fail(ErrorKind::InvalidConfig, "unsupported prompt language \"" + std::string(s) + "\" (zh-TW or en)");
}

inline std::string to_string(Language l) { return l == Language::ZhTw ? "zh-TW" : "en"; }

struct Prompt {
  std::string system;
  std::string user;
};

/// Citation token the generator is told to use, in every language.
inline std::string citation(int n) { return "(Reference " + std::to_string(n) + ")"; }

// ---------------------------------------------------------------------------
// Relevance judging

inline std::string relevance_rubric(Language lang) {
  if (lang == Language::ZhTw) {
    return "評分標準：\n"
           "- 90-100：高度相關。文章直接報導查詢主題。\n"
           "- 70-89：強烈相關。與主題緊密相連，但內容可能略有偏離。\n"
           "- 50-69：部分相關。觸及主題的一部分，但並非文章重點。\n"
           "- 0-49：不相關。與主題無關，或只有極少關聯。\n";
  }
  return "Scoring bands:\n"
         "- 90-100: Highly relevant. The article reports directly on the query topic.\n"
         "- 70-89: Strongly relevant. Closely tied to the topic, with some drift.\n"
         "- 50-69: Somewhat relevant. Touches part of the topic without centring on it.\n"
         "- 0-49: Not relevant. Unrelated, or only marginally connected.\n";
}

inline Prompt judge(Language lang, std::string_view query, std::string_view date, std::string_view title,
                    std::string_view summary) {
  Prompt p;
  if (lang == Language::ZhTw) {
    p.system = "你是新聞檢索系統的相關性評審，負責判斷一篇新聞與查詢主題的一致性分數（0 到 100 的整數）。\n\n" +
               relevance_rubric(lang);
    p.user = "查詢主題：" + std::string(query) + "\n\n新聞日期：" + std::string(date) + "\n新聞標題：" +
             std::string(title) + "\n新聞摘要：" + std::string(summary) +
             "\n\n請只回覆一個 0 到 100 的整數分數，不要附加任何說明。";
  } else {
    p.system = "You judge relevance for a news retrieval system. Rate how consistent a news article is with the "
               "query topic as an integer from 0 to 100.\n\n" +
               relevance_rubric(lang);
    p.user = "Query topic: " + std::string(query) + "\n\nArticle date: " + std::string(date) +
             "\nArticle title: " + std::string(title) + "\nArticle summary: " + std::string(summary) +
             "\n\nReply with a single integer from 0 to 100 and nothing else.";
  }
  return p;
}

// ---------------------------------------------------------------------------
// Graded summaries

inline std::vector<std::string> summary_constraints(Language lang) {
  if (lang == Language::ZhTw) {
    return {"保留原文中的重要事實、數字，以及具名人士的發言（如有）。", "立場客觀中立，不加入個人意見。",
            "保留原文提到的時間與地點。", "原文若呈現多方觀點，摘要須兼顧各方，保持平衡。"};
  }
  return {"Keep the important facts, figures and attributed statements (if any) from the original.",
          "Stay objective; add no opinions of your own.", "Keep the times and places the original mentions.",
          "Where the original presents several viewpoints, keep the summary balanced between them."};
}

inline std::string required_elements_heading(Language lang) {
  return lang == Language::ZhTw ? "【必須包含的要素】" : "[Required elements]";
}

inline Prompt summarize(Language lang, std::string_view grade_label, const std::vector<std::string>& element_names,
                        std::string_view date, std::string_view title, std::string_view content) {
  Prompt p;
  std::string elements;
  for (const auto& e : element_names) elements += "- " + e + "\n";
  std::string rules;
  const auto constraints = summary_constraints(lang);
  for (std::size_t i = 0; i < constraints.size(); ++i) rules += std::to_string(i + 1) + ". " + constraints[i] + "\n";
  if (lang == Language::ZhTw) {
    p.system = "你是專業的新聞編輯，依照指定的詳細程度撰寫符合正式新聞規範的摘要。";
    p.user = "請為下列新聞撰寫摘要。摘要等級：" + std::string(grade_label) + "\n\n" + required_elements_heading(lang) +
             "\n" + elements + "\n【撰寫規範】\n" + rules + "\n日期：" + std::string(date) + "\n標題：" +
             std::string(title) + "\n內文：\n" + std::string(content) + "\n\n請直接輸出摘要內容。";
  } else {
    p.system = "You are a news editor writing summaries that follow formal news standards at a specified level "
               "of detail.";
    p.user = "Summarize the article below. Summary grade: " + std::string(grade_label) + "\n\n" +
             required_elements_heading(lang) + "\n" + elements + "\n[Writing rules]\n" + rules +
             "\nDate: " + std::string(date) + "\nTitle: " + std::string(title) + "\nContent:\n" +
             std::string(content) + "\n\nOutput the summary only.";
  }
  return p;
}

// ---------------------------------------------------------------------------
// Guided generation

inline std::string reference_block(Language lang, int number, std::string_view date, std::string_view title,
                                   std::string_view score, std::string_view summary) {
  if (lang == Language::ZhTw) {
    return "Reference " + std::to_string(number) + "\n日期：" + std::string(date) + "\n標題：" + std::string(title) +
           "\n一致性分數：" + std::string(score) + "\n摘要：" + std::string(summary) + "\n";
  }
  return "Reference " + std::to_string(number) + "\nDate: " + std::string(date) + "\nTitle: " + std::string(title) +
         "\nConsistency score: " + std::string(score) + "\nSummary: " + std::string(summary) + "\n";
}

/// The four instruction groups, each starting with its label.
inline std::vector<std::string> generation_instructions(Language lang, bool with_references) {
  std::vector<std::string> out;
  if (lang == Language::ZhTw) {
    if (with_references) {
      out.push_back("引用格式：每項資訊都要標明出處，使用 (Reference X) 的格式，X 為參考資料編號。");
      out.push_back("依據事實：所有關鍵資訊與數據都必須直接來自參考資料或使用者提供的主題，不得自行杜撰。");
    } else {
      out.push_back("依據事實：只寫能從主題本身確認的資訊，不要杜撰數據、引述或細節。");
    }
    out.push_back("專業語氣：以正式的繁體中文新聞報導語氣撰寫，避免口語化或過於學術的用語。");
    out.push_back("明確時間：寫出具體的時間點（例如「2024年1月」），不要使用「上個月」、「去年」等相對時間。");
  } else {
    if (with_references) {
      out.push_back("Citations: mark the source of each piece of information as (Reference X), where X is the "
                    "reference number.");
      out.push_back("Facts: every key fact and figure must come directly from the references or from the topic "
                    "the user supplied. Do not invent material.");
    } else {
      out.push_back("Facts: only write what the topic itself supports. Do not invent figures, quotes or details.");
    }
    out.push_back("Tone: write as a professional news report, neither casual nor "
                  "academic.");
    out.push_back("Dates: give explicit points in time (for example \"January 2024\") instead of relative terms "
                  "such as \"last month\".");
  }
  return out;
}

inline Prompt generate(Language lang, std::string_view query, const std::vector<std::string>& blocks) {
  Prompt p;
  std::string rules;
  const auto groups = generation_instructions(lang, !blocks.empty());
  for (std::size_t i = 0; i < groups.size(); ++i) rules += std::to_string(i + 1) + ". " + groups[i] + "\n";
  std::string refs;
  for (const auto& b : blocks) refs += b + "\n";
  if (lang == Language::ZhTw) {
    p.system = "你是專業的新聞記者，撰寫正式的繁體中文新聞報導。";
    p.user = "新聞主題：" + std::string(query) + "\n\n寫作要求：\n" + rules;
    if (!blocks.empty()) p.user += "\n參考資料：\n\n" + refs;
    p.user += "\n請撰寫一篇完整的新聞報導。";
  } else {
    p.system = "You are a professional news reporter writing formal news articles.";
    p.user = "News topic: " + std::string(query) + "\n\nRequirements:\n" + rules;
    if (!blocks.empty()) p.user += "\nReferences:\n\n" + refs;
    p.user += "\nWrite a complete news article.";
  }
  return p;
}

// ---------------------------------------------------------------------------
// Article quality evaluation

struct CriterionAnchors {
  std::string key;
  std::string label;
  std::string five;
  std::string three;
  std::string one;
};

inline std::vector<CriterionAnchors> evaluation_rubric(Language lang) {
  if (lang == Language::ZhTw) {
    return {
        {"coherence", "連貫性",
         "六項 5W1H 問題（何事、何人、何時、何地、為何、如何）都有交代，事件依清楚的時間順序鋪陳，段落之間順暢銜接。",
         "有兩項 5W1H 問題沒有交代（例如關鍵人物、時間或地點），或部分段落轉折突兀。",
         "四項以上 5W1H 問題沒有交代，內容彼此矛盾，或時間順序錯亂。"},
        {"accuracy", "正確性", "所有敘述都符合事實，沒有任何杜撰內容。", "有少數細小的事實錯誤或部分誤解。",
         "有明顯的事實錯誤或大量杜撰內容。"},
        {"professionalism", "專業性", "全文語氣中立客觀，完全符合新聞寫作規範。", "偶有口語化措辭，或語氣不夠一致。",
         "語氣不專業，或帶有明顯主觀偏見。"},
        {"informativeness", "資訊量", "細節豐富，交代背景、起因、後果與關鍵人物。", "提供基本脈絡，但缺少重要細節或深度。",
         "只有表面描述，資訊很少。"},
    };
  }
  return {
      {"coherence", "Coherence",
       "All six 5W1H questions (what, who, when, where, why, how) are answered, events follow a clear chronology, "
       "and paragraphs flow into each other.",
       "Two of the 5W1H questions go unanswered (for example key people, time or place), or some transitions are "
       "abrupt.",
       "Four or more 5W1H questions go unanswered, the content contradicts itself, or the chronology is broken."},
      {"accuracy", "Accuracy", "Every statement is factually correct and nothing is invented.",
       "A few small factual slips or partial misreadings.", "Clear factual errors or substantial invented content."},
      {"professionalism", "Professionalism", "Neutral, objective tone that meets newsroom standards throughout.",
       "Occasional colloquial phrasing or an uneven tone.", "Unprofessional tone or evident subjective bias."},
      {"informativeness", "Informativeness", "Detailed, covering background, causes, consequences and key people.",
       "Basic context, but important details or depth are missing.",
       "Surface-level description with little information."},
  };
}

inline Prompt evaluate(Language lang, std::string_view body) {
  Prompt p;
  std::string rubric;
  for (const auto& c : evaluation_rubric(lang)) {
    rubric += c.label + " (" + c.key + ", 1-5)\n  5: " + c.five + "\n  3: " + c.three + "\n  1: " + c.one + "\n";
  }
  const std::string format =
      R"({"coherence": <1-5>, "accuracy": <1-5>, "professionalism": <1-5>, "informativeness": <1-5>})";
  if (lang == Language::ZhTw) {
    p.system = "你是資深新聞編輯，依照下列標準為新聞報導評分。每項標準為 1 到 5 分，2 分與 4 分介於相鄰描述之間。\n\n" +
               rubric;
    p.user = "請評分以下新聞報導：\n\n" + std::string(body) + "\n\n請只以 JSON 回覆，格式為：" + format;
  } else {
    p.system = "You are a senior news editor scoring news articles against the criteria below. Each criterion is "
               "scored 1 to 5; 2 and 4 fall between the neighbouring descriptions.\n\n" +
               rubric;
    p.user = "Score the following news article:\n\n" + std::string(body) + "\n\nReply with JSON only, in the form " +
             format;
  }
  return p;
}

}  // namespace scorerag::prompts
