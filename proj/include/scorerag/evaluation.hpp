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

#include <boost/math/distributions/students_t.hpp>
#include <boost/tokenizer.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scorerag/error.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/log.hpp"
#include "scorerag/prompts.hpp"
#include "scorerag/text.hpp"

namespace scorerag::eval {

struct CriterionWeights {
  static constexpr double coherence = 0.2;
  static constexpr double accuracy = 0.35;
  static constexpr double professionalism = 0.1;
  static constexpr double informativeness = 0.35;
};

inline constexpr std::array<const char*, 4> kCriteria = {"coherence", "accuracy", "professionalism",
                                                         "informativeness"};
inline constexpr double kMinCriterion = 1.0;
inline constexpr double kMaxCriterion = 5.0;

struct CriterionScores {
  double coherence = 0;
  double accuracy = 0;
  double professionalism = 0;
  double informativeness = 0;

  double operator[](std::size_t i) const {
    switch (i) {
      case 0:
        return coherence;
      case 1:
        return accuracy;
      case 2:
        return professionalism;
      default:
        return informativeness;
    }
  }
  friend bool operator==(const CriterionScores&, const CriterionScores&) = default;
};

inline bool in_range(double x) { return x >= kMinCriterion && x <= kMaxCriterion; }

inline double weighted_total(double c, double a, double p, double i) {
  for (double x : {c, a, p, i}) {
    if (!in_range(x)) fail(ErrorKind::OutOfRange, "criterion score must be within [1, 5], got " + std::to_string(x));
  }
  return CriterionWeights::coherence * c + CriterionWeights::accuracy * a + CriterionWeights::professionalism * p +
         CriterionWeights::informativeness * i;
}

inline double weighted_total(const CriterionScores& s) {
  return weighted_total(s.coherence, s.accuracy, s.professionalism, s.informativeness);
}

/// One rater's scores for one article of one system. An unevaluated entry
/// has no criteria; it is kept so comparisons can drop its pair.
struct EvaluationScore {
  std::string article_id;
  std::string system_label;
  std::string rater = "llm";
  std::optional<CriterionScores> criteria;
  std::optional<double> weighted_total;

  bool evaluated() const { return criteria.has_value(); }
};

inline EvaluationScore make_score(std::string article_id, std::string system, std::string rater,
                                  std::optional<CriterionScores> criteria) {
  EvaluationScore s{std::move(article_id), std::move(system), std::move(rater), criteria, std::nullopt};
  if (criteria) s.weighted_total = eval::weighted_total(*criteria);
  return s;
}

// ---------------------------------------------------------------------------
// Judge reply parsing

namespace detail {

inline const std::vector<std::vector<std::string>>& aliases() {
  static const std::vector<std::vector<std::string>> kAliases = {
      {"coherence", "連貫性", "连贯性"},
      {"accuracy", "正確性", "准确性", "準確性", "正确性"},
      {"professionalism", "專業性", "专业性"},
      {"informativeness", "資訊量", "信息量", "資訊性", "資訊豐富度"},
  };
  return kAliases;
}

inline std::optional<double> to_number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = text::trim(v.get<std::string>());
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size()) return d;
  }
  return std::nullopt;
}

inline void collect_json(const nlohmann::json& j, std::array<std::optional<double>, 4>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string k = text::ascii_lower(key);
      for (std::size_t c = 0; c < 4; ++c) {
        for (const auto& alias : aliases()[c]) {
          if (k == alias && !out[c]) {
            if (auto n = to_number(value)) out[c] = n;
            // {"coherence": {"score": 4, "reason": "..."}}
            if (value.is_object() && value.contains("score")) out[c] = to_number(value["score"]);
          }
        }
      }
      collect_json(value, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_json(v, out);
  }
}

inline std::optional<CriterionScores> from_json_text(std::string_view reply) {
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) return std::nullopt;
  const auto j = nlohmann::json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  std::array<std::optional<double>, 4> got;
  collect_json(j, got);
  for (const auto& g : got) {
    if (!g) return std::nullopt;
  }
  return CriterionScores{*got[0], *got[1], *got[2], *got[3]};
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// First score-like number after pos on the same line. Ranges such as
/// "(1-5)" are skipped.
inline std::optional<double> number_after(const std::string& s, std::size_t pos) {
  const std::size_t end = std::min(s.size(), pos + 48);
  std::size_t i = pos;
  while (i < end && s[i] != '\n') {
    if (!is_digit(s[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
      for (++i; i < s.size() && is_digit(s[i]); ++i) {
      }
    }
    const bool range = i + 1 < s.size() && (s[i] == '-' || s[i] == '~') && is_digit(s[i + 1]);
    if (range) {
      for (++i; i < s.size() && is_digit(s[i]); ++i) {
      }
      continue;
    }
    return std::strtod(s.substr(start, i - start).c_str(), nullptr);
  }
  return std::nullopt;
}

inline std::optional<CriterionScores> from_labelled_text(std::string_view reply) {
  const std::string s = text::ascii_lower(text::fold_fullwidth(reply));
  std::array<double, 4> got{};
  for (std::size_t c = 0; c < 4; ++c) {
    std::optional<double> found;
    for (const auto& alias : aliases()[c]) {
      for (auto pos = s.find(alias); pos != std::string::npos && !found; pos = s.find(alias, pos + 1)) {
        found = number_after(s, pos + alias.size());
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
    got[c] = *found;
  }
  return CriterionScores{got[0], got[1], got[2], got[3]};
}

}  // namespace detail

/// Four criterion scores from a judge reply: JSON anywhere in the reply
/// first, then "label: value" text in English or Chinese. Every score must
/// lie in [1, 5].
inline std::optional<CriterionScores> parse_criteria(std::string_view reply) {
  auto got = detail::from_json_text(reply);
  if (!got) got = detail::from_labelled_text(reply);
  if (!got) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!in_range((*got)[i])) return std::nullopt;
  }
  return got;
}

struct JudgeConfig {
  prompts::Language language = prompts::Language::ZhTw;
  double temperature = 0.0;
};

/// LLM-judge scoring of one generated article body. A reply without four
/// valid scores is retried once; after that the entry is unevaluated.
inline EvaluationScore llm_judge(llm::LlmGateway& llm, const std::string& article_id, const std::string& system_label,
                                 std::string_view body, const JudgeConfig& config,
                                 std::vector<std::string>& warnings) {
  if (text::is_blank(body)) fail(ErrorKind::InvalidInput, "article body must be non-empty");
  const auto prompt = prompts::evaluate(config.language, body);
  llm::ChatRequest req{prompt.system, prompt.user, config.temperature, std::nullopt, llm::tags::kEvaluate};
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (auto c = parse_criteria(llm.complete(req))) return make_score(article_id, system_label, "llm", c);
  }
  std::string msg = "article " + article_id + " (" + system_label + "): judge scores unparseable twice, unevaluated";
  log::warn(msg);
  warnings.push_back(std::move(msg));
  return make_score(article_id, system_label, "llm", std::nullopt);
}

// ---------------------------------------------------------------------------
// CSV ingest

/// Columns by header name: article_id, system, coherence, accuracy,
/// professionalism, informativeness and an optional rater (default "llm").
/// Any other column, a precomputed total included, is ignored. A row with
/// all four criteria blank is unevaluated.
inline std::vector<EvaluationScore> parse_scores_csv(std::string_view csv, const std::string& origin = "scores") {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  const boost::escaped_list_separator<char> sep("", ",", "\"");
  auto split = [&](const std::string& line, std::size_t lineno) {
    std::vector<std::string> cells;
    try {
      Tokenizer tok(line, sep);
      for (const auto& c : tok) cells.push_back(text::trim(c));
    } catch (const boost::escaped_list_error& e) {
      fail(ErrorKind::InvalidInput, origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    return cells;
  };

  std::vector<std::string> lines;
  for (std::size_t start = 0; start <= csv.size();) {
    auto nl = csv.find('\n', start);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string line(csv.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  if (!lines.empty() && lines[0].rfind("\xEF\xBB\xBF", 0) == 0) lines[0].erase(0, 3);
  if (lines.empty() || text::is_blank(lines[0])) fail(ErrorKind::InvalidInput, origin + ": missing header row");

  const auto header = split(lines[0], 1);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[text::ascii_lower(header[i])] = i;
  for (const char* need : {"article_id", "system", "coherence", "accuracy", "professionalism", "informativeness"}) {
    if (!col.count(need)) fail(ErrorKind::InvalidInput, origin + ": missing column \"" + std::string(need) + "\"");
  }

  std::vector<EvaluationScore> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (text::is_blank(lines[n])) continue;
    const std::string where = origin + ":" + std::to_string(n + 1);
    const auto cells = split(lines[n], n + 1);
    auto cell = [&](const std::string& name) -> std::string {
      auto it = col.find(name);
      if (it == col.end() || it->second >= cells.size()) return "";
      return cells[it->second];
    };
    const std::string id = cell("article_id");
    const std::string system = cell("system");
    if (id.empty() || system.empty()) fail(ErrorKind::InvalidInput, where + ": article_id and system are required");
    std::string rater = cell("rater");
    if (rater.empty()) rater = "llm";
    std::array<std::optional<double>, 4> v;
    std::size_t blanks = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      const std::string raw = cell(kCriteria[c]);
      if (raw.empty()) {
        ++blanks;
        continue;
      }
      v[c] = detail::to_number(nlohmann::json(raw));
      if (!v[c]) fail(ErrorKind::InvalidInput, where + ": " + kCriteria[c] + " is not a number: \"" + raw + "\"");
      if (!in_range(*v[c])) fail(ErrorKind::OutOfRange, where + ": " + kCriteria[c] + " must be within [1, 5]");
    }
    if (blanks != 0 && blanks != 4) {
      fail(ErrorKind::InvalidInput, where + ": criteria must be all present or all blank");
    }
    std::optional<CriterionScores> criteria;
    if (blanks == 0) criteria = CriterionScores{*v[0], *v[1], *v[2], *v[3]};
    out.push_back(make_score(id, system, rater, criteria));
  }
  return out;
}

inline std::vector<EvaluationScore> read_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scores_csv(data, path.string());
}

inline std::vector<EvaluationScore> for_system(const std::vector<EvaluationScore>& all, std::string_view system) {
  std::vector<EvaluationScore> out;
  for (const auto& s : all) {
    if (s.system_label == system) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

struct Quartiles {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Linear interpolation between order statistics (Hyndman and Fan type 7).
inline double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) fail(ErrorKind::InvalidInput, "quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

inline Quartiles quartiles(const std::vector<double>& xs) {
  return Quartiles{quantile(xs, 0.0), quantile(xs, 0.25), quantile(xs, 0.5), quantile(xs, 0.75), quantile(xs, 1.0)};
}

inline double mean(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

struct PairedTTest {
  std::size_t n = 0;
  double mean_difference = 0;
  std::optional<double> t_statistic;
  std::optional<double> p_value;  // two-sided; absent when n < 2
};

/// Two-sided paired t-test on a - b. With zero spread the statistic is 0
/// (p = 1) for a zero mean difference and infinite (p = 0) otherwise.
inline PairedTTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) fail(ErrorKind::MismatchedIds, "paired samples differ in length");
  PairedTTest out;
  out.n = a.size();
  if (out.n == 0) return out;
  std::vector<double> d(out.n);
  for (std::size_t i = 0; i < out.n; ++i) d[i] = a[i] - b[i];
  out.mean_difference = mean(d);
  if (out.n < 2) return out;
  double ss = 0;
  for (double x : d) ss += (x - out.mean_difference) * (x - out.mean_difference);
  const double sd = std::sqrt(ss / static_cast<double>(out.n - 1));
  if (sd == 0.0) {
    if (out.mean_difference == 0.0) {
      out.t_statistic = 0.0;
      out.p_value = 1.0;
    } else {
      out.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), out.mean_difference);
      out.p_value = 0.0;
    }
    return out;
  }
  const double t = out.mean_difference / (sd / std::sqrt(static_cast<double>(out.n)));
  const boost::math::students_t dist(static_cast<double>(out.n - 1));
  out.t_statistic = t;
  out.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

inline constexpr std::array<const char*, 5> kMetrics = {"coherence", "accuracy", "professionalism",
                                                        "informativeness", "total"};

struct SystemSummary {
  std::string label;
  std::map<std::string, double> means;
  std::map<std::string, Quartiles> quartiles;
  std::map<std::string, std::vector<double>> values;  // in pair order
};

struct ComparisonReport {
  std::size_t n_pairs = 0;
  std::vector<std::string> pair_keys;  // "article_id/rater"
  std::vector<std::string> excluded;
  SystemSummary a;
  SystemSummary b;
  std::map<std::string, PairedTTest> tests;  // a minus b
  std::vector<std::string> warnings;
};

namespace detail {

using PairKey = std::pair<std::string, std::string>;

inline std::map<PairKey, const EvaluationScore*> key_scores(const std::vector<EvaluationScore>& xs,
                                                            const std::string& which) {
  std::map<PairKey, const EvaluationScore*> out;
  for (const auto& s : xs) {
    if (!out.emplace(PairKey{s.article_id, s.rater}, &s).second) {
      fail(ErrorKind::InvalidInput, which + " has more than one score for article " + s.article_id + " by " + s.rater);
    }
  }
  return out;
}

inline double metric(const EvaluationScore& s, std::size_t m) { return m < 4 ? (*s.criteria)[m] : *s.weighted_total; }

}  // namespace detail

/// Pairs the two systems' scores by (article_id, rater) and summarizes
/// both. A pair where either side is unevaluated is dropped from every
/// statistic.
inline ComparisonReport compare(const std::vector<EvaluationScore>& scores_a,
                                const std::vector<EvaluationScore>& scores_b) {
  if (scores_a.empty() || scores_b.empty()) fail(ErrorKind::InvalidInput, "both systems need at least one score");
  ComparisonReport r;
  r.a.label = scores_a.front().system_label;
  r.b.label = scores_b.front().system_label;
  const auto ka = detail::key_scores(scores_a, r.a.label);
  const auto kb = detail::key_scores(scores_b, r.b.label);

  std::vector<std::string> only;
  for (const auto& [k, _] : ka) {
    if (!kb.count(k)) only.push_back(k.first + "/" + k.second + " only in " + r.a.label);
  }
  for (const auto& [k, _] : kb) {
    if (!ka.count(k)) only.push_back(k.first + "/" + k.second + " only in " + r.b.label);
  }
  if (!only.empty()) {
    std::string msg = "systems were not scored on the same articles: " + only.front();
    if (only.size() > 1) msg += " (and " + std::to_string(only.size() - 1) + " more)";
    fail(ErrorKind::MismatchedIds, msg);
  }

  // Pair order follows scores_a.
  std::vector<std::pair<const EvaluationScore*, const EvaluationScore*>> pairs;
  for (const auto& s : scores_a) {
    const auto* other = kb.at({s.article_id, s.rater});
    const std::string key = s.article_id + "/" + s.rater;
    if (!s.evaluated() || !other->evaluated()) {
      r.excluded.push_back(key);
      r.warnings.push_back("pair " + key + " excluded: unevaluated in " +
                           (!s.evaluated() ? r.a.label : r.b.label));
      continue;
    }
    pairs.emplace_back(&s, other);
    r.pair_keys.push_back(key);
  }
  if (pairs.empty()) fail(ErrorKind::InvalidInput, "no evaluated pairs to compare");
  r.n_pairs = pairs.size();

  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    std::vector<double> va, vb;
    for (const auto& [x, y] : pairs) {
      va.push_back(detail::metric(*x, m));
      vb.push_back(detail::metric(*y, m));
    }
    r.a.means[kMetrics[m]] = mean(va);
    r.b.means[kMetrics[m]] = mean(vb);
    r.a.quartiles[kMetrics[m]] = quartiles(va);
    r.b.quartiles[kMetrics[m]] = quartiles(vb);
    r.tests[kMetrics[m]] = paired_t_test(va, vb);
    r.a.values[kMetrics[m]] = std::move(va);
    r.b.values[kMetrics[m]] = std::move(vb);
  }
  return r;
}

inline ComparisonReport compare_systems(const std::vector<EvaluationScore>& all, const std::string& system_a,
                                        const std::string& system_b) {
  auto a = for_system(all, system_a);
  auto b = for_system(all, system_b);
  if (a.empty()) fail(ErrorKind::InvalidInput, "no scores for system \"" + system_a + "\"");
  if (b.empty()) fail(ErrorKind::InvalidInput, "no scores for system \"" + system_b + "\"");
  return compare(a, b);
}

inline nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) {
    if (v && std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    return nullptr;
  }
  return *v;
}

inline nlohmann::ordered_json to_json(const SystemSummary& s) {
  nlohmann::ordered_json j;
  j["label"] = s.label;
  for (const char* m : kMetrics) j["means"][m] = s.means.at(m);
  for (const char* m : kMetrics) {
    const auto& q = s.quartiles.at(m);
    j["quartiles"][m] = {{"min", q.min}, {"q1", q.q1}, {"median", q.median}, {"q3", q.q3}, {"max", q.max}};
  }
  for (const char* m : kMetrics) j["values"][m] = s.values.at(m);
  return j;
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["n_pairs"] = r.n_pairs;
  j["pairs"] = r.pair_keys;
  j["excluded"] = r.excluded;
  j["systems"] = nlohmann::ordered_json::array({to_json(r.a), to_json(r.b)});
  for (const char* m : kMetrics) {
    const auto& t = r.tests.at(m);
    j["paired_t_test"][m] = {{"mean_difference", t.mean_difference},
                             {"t", optional_number(t.t_statistic)},
                             {"df", t.n < 2 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.n - 1)},
                             {"p_value", optional_number(t.p_value)}};
  }
  j["weights"] = {{"coherence", CriterionWeights::coherence},
                  {"accuracy", CriterionWeights::accuracy},
                  {"professionalism", CriterionWeights::professionalism},
                  {"informativeness", CriterionWeights::informativeness}};
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace scorerag::eval
