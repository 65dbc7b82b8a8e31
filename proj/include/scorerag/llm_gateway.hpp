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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "scorerag/error.hpp"
#include "scorerag/text.hpp"

namespace scorerag::llm {

namespace tags {
inline constexpr const char* kJudge = "judge";
inline constexpr const char* kSummarize = "summarize";
inline constexpr const char* kGenerate = "generate";
inline constexpr const char* kEvaluate = "evaluate";
}  // namespace tags

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  std::optional<int> max_tokens;
  std::string tag;
};

inline void validate(const ChatRequest& r) {
  if (text::is_blank(r.user_prompt)) fail(ErrorKind::InvalidInput, "user_prompt must be non-empty");
  if (!(r.temperature >= 0.0) || !std::isfinite(r.temperature)) {
    fail(ErrorKind::InvalidInput, "temperature must be a finite value >= 0");
  }
  if (r.max_tokens && *r.max_tokens < 1) fail(ErrorKind::InvalidInput, "max_tokens must be >= 1");
}

class LlmGateway {
 public:
  virtual ~LlmGateway() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

struct TranscriptEntry {
  std::size_t seq = 0;
  ChatRequest request;
  std::string reply;
  std::optional<std::string> error;
};

class Transcript {
 public:
  void append(ChatRequest request, std::string reply, std::optional<std::string> error = std::nullopt) {
    std::lock_guard lock(mu_);
    entries_.push_back(TranscriptEntry{entries_.size(), std::move(request), std::move(reply), std::move(error)});
  }

  std::vector<TranscriptEntry> entries() const {
    std::lock_guard lock(mu_);
    return entries_;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

  std::size_t count(std::string_view tag) const {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.request.tag == tag;
    return n;
  }

  nlohmann::ordered_json to_json() const {
    std::lock_guard lock(mu_);
    auto out = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
      nlohmann::ordered_json j;
      j["seq"] = e.seq;
      j["tag"] = e.request.tag;
      j["temperature"] = e.request.temperature;
      j["system_prompt"] = e.request.system_prompt;
      j["user_prompt"] = e.request.user_prompt;
      j["reply"] = e.reply;
      if (e.error) j["error"] = *e.error;
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
};

/// Forwards to another gateway and logs every call, failed ones included.
class RecordingGateway final : public LlmGateway {
 public:
  RecordingGateway(LlmGateway& inner, Transcript& transcript) : inner_(inner), transcript_(transcript) {}

  std::string complete(const ChatRequest& request) override {
    try {
      std::string reply = inner_.complete(request);
      transcript_.append(request, reply);
      return reply;
    } catch (const std::exception& e) {
      transcript_.append(request, "", e.what());
      throw;
    }
  }

  std::string name() const override { return inner_.name(); }

 private:
  LlmGateway& inner_;
  Transcript& transcript_;
};

// ---------------------------------------------------------------------------
// Scripted stub

struct StubRule {
  std::optional<std::string> tag;
  std::optional<std::string> contains;
  std::optional<std::string> pattern;
  std::vector<std::string> responses;

  bool catch_all() const { return !tag && !contains && !pattern; }
};

/// Ordered rules; the first rule whose every present matcher accepts the
/// request answers it. Matchers look at system and user prompt together.
/// Each rule cycles through its responses. When a rule has a regex, its
/// responses may reference capture groups as $1, $2, ...
class StubGateway final : public LlmGateway {
 public:
  explicit StubGateway(std::vector<StubRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) fail(ErrorKind::InvalidConfig, "stub script has no rules");
    bool has_catch_all = false;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].responses.empty()) {
        fail(ErrorKind::InvalidConfig, "stub rule " + std::to_string(i) + " has no responses");
      }
      has_catch_all = has_catch_all || rules_[i].catch_all();
      std::optional<std::regex> re;
      if (rules_[i].pattern) {
        try {
          re.emplace(*rules_[i].pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
          fail(ErrorKind::InvalidConfig, "stub rule " + std::to_string(i) + " regex: " + e.what());
        }
      }
      regexes_.push_back(std::move(re));
    }
    if (!has_catch_all) fail(ErrorKind::InvalidConfig, "stub script needs a catch-all rule");
    counters_ = std::make_unique<std::atomic<std::size_t>[]>(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i) counters_[i].store(0);
  }

  static StubGateway from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rules") || !j["rules"].is_array()) {
      fail(ErrorKind::InvalidConfig, "stub script must be an object with a \"rules\" array");
    }
    std::vector<StubRule> rules;
    for (const auto& r : j["rules"]) {
      StubRule rule;
      try {
        if (r.contains("tag")) rule.tag = r["tag"].get<std::string>();
        if (r.contains("contains")) rule.contains = r["contains"].get<std::string>();
        if (r.contains("regex")) rule.pattern = r["regex"].get<std::string>();
        if (r.contains("response")) rule.responses.push_back(r["response"].get<std::string>());
        if (r.contains("responses")) {
          for (const auto& x : r["responses"]) rule.responses.push_back(x.get<std::string>());
        }
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("bad stub rule: ") + e.what());
      }
      rules.push_back(std::move(rule));
    }
    return StubGateway(std::move(rules));
  }

  static StubGateway load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::InvalidConfig, "cannot open stub script " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      return from_json(nlohmann::json::parse(ss.str()));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::InvalidConfig, "stub script " + path.string() + ": " + e.what());
    }
  }

  std::string complete(const ChatRequest& request) override {
    validate(request);
    const std::string haystack = request.system_prompt + "\n" + request.user_prompt;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const StubRule& rule = rules_[i];
      if (rule.tag && *rule.tag != request.tag) continue;
      if (rule.contains && haystack.find(*rule.contains) == std::string::npos) continue;
      std::smatch m;
      if (regexes_[i] && !std::regex_search(haystack, m, *regexes_[i])) continue;
      const std::size_t slot = counters_[i].fetch_add(1) % rule.responses.size();
      const std::string& reply = rule.responses[slot];
      return regexes_[i] ? m.format(reply) : reply;
    }
    fail(ErrorKind::InvalidConfig, "no stub rule matched");  // unreachable with a catch-all
  }

  std::string name() const override { return "stub"; }

  const std::vector<StubRule>& rules() const { return rules_; }

 private:
  std::vector<StubRule> rules_;
  std::vector<std::optional<std::regex>> regexes_;
  std::unique_ptr<std::atomic<std::size_t>[]> counters_;
};

}  // namespace scorerag::llm
