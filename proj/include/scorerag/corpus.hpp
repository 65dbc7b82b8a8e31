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
#include <cctype>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scorerag/date.hpp"
#include "scorerag/error.hpp"
#include "scorerag/log.hpp"
#include "scorerag/text.hpp"

namespace scorerag {

struct NewsId {
  std::int64_t value = 0;

  friend auto operator<=>(const NewsId&, const NewsId&) = default;
  std::string str() const { return std::to_string(value); }
};

struct NewsRecord {
  NewsId news_id;
  Date published_date;
  std::string title;
  std::string summary;
  std::string content;

  friend bool operator==(const NewsRecord&, const NewsRecord&) = default;
};

}  // namespace scorerag

template <>
struct std::hash<scorerag::NewsId> {
  std::size_t operator()(const scorerag::NewsId& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

namespace scorerag::corpus {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Cleaning
// ---------------------------------------------------------------------------

struct CleanerConfig {
  /// Lines containing any of these substrings are dropped.
  std::vector<std::string> ad_markers = {"【廣告】", "（廣告）", "(廣告)", "贊助廣告",
                                         "延伸閱讀", "點擊訂閱", "Advertisement",
                                         "ADVERTISEMENT", "Sponsored content"};
  /// ECMAScript regexes; a line matching any of them is dropped.
  std::vector<std::string> ad_patterns;
};

struct RawArticle {
  std::string source_markup;
  Date scraped_date;
  std::optional<std::string> source_url;
  // Present when the scraper already separated the fields; otherwise the
  // title is pulled from <h1>/<title> inside source_markup.
  std::optional<NewsId> news_id;
  std::string title_markup;
  std::string summary_markup;
};

namespace detail {

inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

inline bool istarts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (text::ascii_lower(s[pos + i]) != prefix[i]) return false;
  }
  return true;
}

inline std::size_t ifind(std::string_view s, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (istarts_with(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

/// Drops comments and script/style-like blocks, leaving a space behind.
inline std::string remove_blocks(std::string_view s) {
  static constexpr std::string_view kBlocks[] = {"script", "style", "noscript", "iframe",
                                                 "template", "head"};
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      out.push_back(s[i++]);
      continue;
    }
    if (s.compare(i, 4, "<!--") == 0) {
      const auto end = s.find("-->", i + 4);
      out.push_back(' ');
      i = end == std::string_view::npos ? s.size() : end + 3;
      continue;
    }
    bool consumed = false;
    for (std::string_view name : kBlocks) {
      const std::size_t after = i + 1 + name.size();
      if (!istarts_with(s, i + 1, name)) continue;
      if (after < s.size() && (std::isalnum(static_cast<unsigned char>(s[after])) || s[after] == '-')) {
        continue;
      }
      std::string closing = "</";
      closing += name;
      auto end = ifind(s, closing, after);
      if (end == std::string_view::npos) {
        i = s.size();
      } else {
        const auto gt = s.find('>', end);
        i = gt == std::string_view::npos ? s.size() : gt + 1;
      }
      out.push_back(' ');
      consumed = true;
      break;
    }
    if (!consumed) out.push_back(s[i++]);
  }
  return out;
}

inline std::string_view tag_replacement(std::string_view tag_body) {
  // tag_body is everything between '<' and '>'.
  std::size_t p = 0;
  if (p < tag_body.size() && tag_body[p] == '/') ++p;
  std::string name;
  while (p < tag_body.size() && std::isalnum(static_cast<unsigned char>(tag_body[p]))) {
    name.push_back(text::ascii_lower(tag_body[p++]));
  }
  static constexpr std::string_view kParagraph[] = {
      "p",     "div",    "section", "article", "header",     "footer", "h1",
      "h2",    "h3",     "h4",      "h5",      "h6",         "li",     "ul",
      "ol",    "tr",     "table",   "blockquote", "figure", "figcaption", "aside",
      "nav",   "main",   "pre",     "hr",      "dl",         "dt",     "dd"};
  if (name == "br") return "\n";
  if (name == "td" || name == "th") return " ";
  for (std::string_view p2 : kParagraph) {
    if (name == p2) return "\n\n";
  }
  return "";
}

/// Removes every substring matching <[a-zA-Z/!][^>]*>.
inline std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && i + 1 < s.size() && (is_alpha(s[i + 1]) || s[i + 1] == '/' || s[i + 1] == '!')) {
      const auto gt = s.find('>', i + 1);
      if (gt != std::string_view::npos) {
        out += tag_replacement(s.substr(i + 1, gt - i - 1));
        i = gt + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

inline std::optional<char32_t> named_entity(std::string_view name) {
  static const std::unordered_map<std::string_view, char32_t> kNamed = {
      {"nbsp", U' '},     {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},
      {"quot", U'"'},     {"apos", U'\''},    {"ldquo", 0x201C},  {"rdquo", 0x201D},
      {"lsquo", 0x2018},  {"rsquo", 0x2019},  {"hellip", 0x2026}, {"mdash", 0x2014},
      {"ndash", 0x2013},  {"middot", 0x00B7}, {"ensp", U' '},     {"emsp", U' '},
      {"thinsp", U' '},   {"copy", 0x00A9},   {"reg", 0x00AE},    {"times", 0x00D7}};
  const auto it = kNamed.find(name);
  if (it == kNamed.end()) return std::nullopt;
  return it->second;
}

inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view body = s.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (body.size() >= 2 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string_view digits = body.substr(hex ? 2 : 1);
      if (!digits.empty() && digits.size() <= 8) {
        std::uint32_t v = 0;
        bool ok = true;
        for (char c : digits) {
          int d;
          if (c >= '0' && c <= '9') d = c - '0';
          else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
          else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
          else { ok = false; break; }
          v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        }
        if (ok) {
          const bool valid = v != 0 && v <= 0x10FFFF && !(v >= 0xD800 && v <= 0xDFFF);
          cp = valid ? static_cast<char32_t>(v) : text::kReplacementChar;
        }
      }
    } else {
      cp = named_entity(body);
    }
    if (!cp) {
      out.push_back(s[i++]);
      continue;
    }
    text::append_utf8(out, *cp);
    i = semi + 1;
  }
  return out;
}

inline std::string drop_ad_lines(std::string_view s, const CleanerConfig& config,
                                 const std::vector<std::regex>& patterns) {
  if (config.ad_markers.empty() && patterns.empty()) return std::string(s);
  std::string out;
  out.reserve(s.size());
  std::size_t start = 0;
  while (start <= s.size()) {
    auto nl = s.find('\n', start);
    const bool last = nl == std::string_view::npos;
    if (last) nl = s.size();
    const std::string_view line = s.substr(start, nl - start);
    bool drop = false;
    for (const auto& m : config.ad_markers) {
      if (!m.empty() && line.find(m) != std::string_view::npos) {
        drop = true;
        break;
      }
    }
    if (!drop) {
      for (const auto& re : patterns) {
        if (std::regex_search(line.begin(), line.end(), re)) {
          drop = true;
          break;
        }
      }
    }
    if (!drop) out += line;
    if (last) break;
    // Keep the newline so paragraph structure survives the drop.
    out.push_back('\n');
    start = nl + 1;
  }
  return out;
}

/// Collapses whitespace runs: runs holding a paragraph break become "\n\n",
/// all others a single space. Invalid UTF-8 is replaced with U+FFFD.
inline std::string normalize_whitespace(std::string_view s) {
  const std::u32string u = text::decode(s);
  std::u32string out;
  out.reserve(u.size());
  std::size_t i = 0;
  while (i < u.size()) {
    if (!text::is_space(u[i])) {
      out.push_back(u[i++]);
      continue;
    }
    int newlines = 0;
    bool para = false;
    while (i < u.size() && text::is_space(u[i])) {
      if (u[i] == U'\n') ++newlines;
      if (u[i] == 0x2029) para = true;
      ++i;
    }
    if (newlines >= 2 || para) {
      out += U"\n\n";
    } else {
      out.push_back(U' ');
    }
  }
  return text::encode(text::trim(std::u32string_view(out)));
}

inline std::vector<std::regex> compile_patterns(const CleanerConfig& config) {
  std::vector<std::regex> out;
  out.reserve(config.ad_patterns.size());
  for (const auto& p : config.ad_patterns) {
    try {
      out.emplace_back(p, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      fail(ErrorKind::InvalidConfig, "bad ad pattern '" + p + "': " + e.what());
    }
  }
  return out;
}

inline std::string clean_pass(std::string_view s, const CleanerConfig& config,
                              const std::vector<std::regex>& patterns) {
  std::string t = remove_blocks(s);
  t = strip_tags(t);
  t = decode_entities(t);
  t = drop_ad_lines(t, config, patterns);
  return normalize_whitespace(t);
}

}  // namespace detail

/// Cleans markup down to plain text. May return an empty string.
inline std::string clean_or_empty(std::string_view markup, const CleanerConfig& config = {}) {
  const auto patterns = detail::compile_patterns(config);
  // Entity decoding can surface new markup ("&lt;p&gt;"), so iterate to a
  // fixed point; that fixed point is what makes cleaning idempotent.
  std::string current = detail::clean_pass(markup, config, patterns);
  for (int pass = 0; pass < 32; ++pass) {
    std::string next = detail::clean_pass(current, config, patterns);
    if (next == current) return current;
    current = std::move(next);
  }
  return detail::normalize_whitespace(detail::strip_tags(current));
}

/// Cleans markup; throws EmptyAfterCleaning when nothing survives.
inline std::string clean(std::string_view markup, const CleanerConfig& config = {}) {
  std::string out = clean_or_empty(markup, config);
  if (out.empty()) fail(ErrorKind::EmptyAfterCleaning, "no text survives cleaning");
  return out;
}

/// True when `s` contains a substring matching <[a-zA-Z/!][^>]*>.
inline bool contains_html_tag(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == '<' && (detail::is_alpha(s[i + 1]) || s[i + 1] == '/' || s[i + 1] == '!') &&
        s.find('>', i + 1) != std::string_view::npos) {
      return true;
    }
  }
  return false;
}

/// Text of the first <h1>, falling back to <title>.
inline std::string extract_title(std::string_view markup) {
  for (std::string_view tag : {std::string_view("h1"), std::string_view("title")}) {
    std::string open = "<";
    open += tag;
    std::size_t pos = 0;
    while ((pos = detail::ifind(markup, open, pos)) != std::string_view::npos) {
      const std::size_t after = pos + open.size();
      if (after < markup.size() && (markup[after] == '>' || text::is_space(static_cast<unsigned char>(markup[after])))) {
        break;
      }
      pos = after;
    }
    if (pos == std::string_view::npos) continue;
    const auto gt = markup.find('>', pos);
    if (gt == std::string_view::npos) continue;
    std::string close = "</";
    close += tag;
    const auto end = detail::ifind(markup, close, gt + 1);
    if (end == std::string_view::npos) continue;
    std::string title = clean_or_empty(markup.substr(gt + 1, end - gt - 1), {});
    if (!title.empty()) return title;
  }
  return {};
}

inline void validate(const NewsRecord& r) {
  if (text::is_blank(r.title)) fail(ErrorKind::InvalidInput, "news " + r.news_id.str() + ": empty title");
  if (text::is_blank(r.content)) fail(ErrorKind::InvalidInput, "news " + r.news_id.str() + ": empty content");
  if (contains_html_tag(r.content)) {
    fail(ErrorKind::InvalidInput, "news " + r.news_id.str() + ": content contains HTML tags");
  }
}

/// Cleans every field of a raw article into a record. The content body is
/// mandatory; a missing title is recovered from the markup.
inline NewsRecord build_record(const RawArticle& raw, NewsId id, const CleanerConfig& config = {}) {
  if (raw.source_markup.empty()) fail(ErrorKind::InvalidInput, "empty source markup");
  NewsRecord r;
  r.news_id = id;
  r.published_date = raw.scraped_date;
  r.content = clean(raw.source_markup, config);
  r.title = clean_or_empty(raw.title_markup, config);
  if (r.title.empty()) r.title = extract_title(raw.source_markup);
  if (r.title.empty()) fail(ErrorKind::EmptyAfterCleaning, "news " + id.str() + ": no title");
  r.summary = clean_or_empty(raw.summary_markup, config);
  return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline ordered_json to_json(const NewsRecord& r) {
  ordered_json j;
  j["news_id"] = r.news_id.value;
  j["published_date"] = r.published_date.iso();
  j["title"] = r.title;
  j["summary"] = r.summary;
  j["content"] = r.content;
  return j;
}

inline NewsRecord record_from_json(const nlohmann::json& j) {
  try {
    NewsRecord r;
    r.news_id = NewsId{j.at("news_id").get<std::int64_t>()};
    r.published_date = Date::parse_iso(j.at("published_date").get<std::string>());
    r.title = j.at("title").get<std::string>();
    r.summary = j.value("summary", std::string{});
    r.content = j.at("content").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed news record: ") + e.what());
  }
}

inline std::string dump_line(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline std::string partition_file_name(int year) {
  return "news_" + std::to_string(year) + ".jsonl";
}

// ---------------------------------------------------------------------------
// Document store
// ---------------------------------------------------------------------------

struct PutReceipt {
  NewsId news_id;
  int partition_year = 0;
};

struct YearPartition {
  int year = 0;
  std::vector<NewsRecord> records;
};

/// Store interface; the embedded JSONL store below is the default adapter.
class DocumentStore {
 public:
  virtual ~DocumentStore() = default;

  virtual PutReceipt put(const NewsRecord& record) = 0;
  virtual NewsRecord get_full(NewsId id) const = 0;
  virtual bool contains(NewsId id) const = 0;
  virtual std::vector<int> years() const = 0;
  virtual YearPartition partition(int year) const = 0;
  virtual std::size_t size() const = 0;
};

/// Year-partitioned store backed by one `news_<year>.jsonl` per year.
/// An empty directory path keeps everything in memory.
class JsonlDocumentStore final : public DocumentStore {
 public:
  JsonlDocumentStore() = default;

  explicit JsonlDocumentStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty() && std::filesystem::exists(dir_)) load_existing();
  }

  PutReceipt put(const NewsRecord& record) override {
    validate(record);
    const int year = record.published_date.year();
    std::unique_lock lock(mu_);
    if (index_.contains(record.news_id)) {
      fail(ErrorKind::DuplicateId, "news_id " + record.news_id.str() + " already stored");
    }
    if (!dir_.empty()) append_to_file(year, record);
    auto& part = partitions_[year];
    index_.emplace(record.news_id, Slot{year, part.size()});
    part.push_back(record);
    return {record.news_id, year};
  }

  NewsRecord get_full(NewsId id) const override {
    std::shared_lock lock(mu_);
    const auto it = index_.find(id);
    if (it == index_.end()) fail(ErrorKind::NotFound, "news_id " + id.str());
    return partitions_.at(it->second.year)[it->second.row];
  }

  bool contains(NewsId id) const override {
    std::shared_lock lock(mu_);
    return index_.contains(id);
  }

  std::vector<int> years() const override {
    std::shared_lock lock(mu_);
    std::vector<int> out;
    for (const auto& [year, _] : partitions_) out.push_back(year);
    return out;
  }

  YearPartition partition(int year) const override {
    std::shared_lock lock(mu_);
    YearPartition p{year, {}};
    if (const auto it = partitions_.find(year); it != partitions_.end()) p.records = it->second;
    return p;
  }

  std::size_t size() const override {
    std::shared_lock lock(mu_);
    return index_.size();
  }

  const std::filesystem::path& directory() const { return dir_; }

 private:
  struct Slot {
    int year;
    std::size_t row;
  };

  void append_to_file(int year, const NewsRecord& record) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / partition_file_name(year);
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for append");
    out << dump_line(to_json(record)) << '\n';
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed on " + path.string());
  }

  void load_existing() {
    static const std::regex kName(R"(news_(\d{4})\.jsonl)");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
      if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), kName)) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      std::smatch m;
      const std::string fname = path.filename().string();
      std::regex_match(fname, m, kName);
      const int file_year = std::stoi(m[1].str());
      std::ifstream in(path, std::ios::binary);
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (text::is_blank(line)) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
          fail(ErrorKind::InvalidInput, where + ": " + e.what());
        }
        NewsRecord r = record_from_json(j);
        validate(r);
        if (r.published_date.year() != file_year) {
          fail(ErrorKind::InvalidInput, where + ": record dated " + r.published_date.iso() +
                                            " in partition " + std::to_string(file_year));
        }
        if (index_.contains(r.news_id)) {
          fail(ErrorKind::DuplicateId, where + ": news_id " + r.news_id.str());
        }
        auto& part = partitions_[file_year];
        index_.emplace(r.news_id, Slot{file_year, part.size()});
        part.push_back(std::move(r));
      }
    }
  }

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
  std::map<int, std::vector<NewsRecord>> partitions_;
  std::unordered_map<NewsId, Slot> index_;
};

// ---------------------------------------------------------------------------
// Raw input reading (ingest)
// ---------------------------------------------------------------------------

struct RawInput {
  RawArticle article;
  std::string origin;  // file[:line], for diagnostics
};

namespace detail {

inline std::string first_string(const nlohmann::json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (j.contains(k) && j[k].is_string()) return j[k].get<std::string>();
  }
  return {};
}

inline std::optional<RawInput> raw_from_json(const nlohmann::json& j, const std::string& origin) {
  RawInput in;
  in.origin = origin;
  auto& a = in.article;
  if (j.contains("news_id") && j["news_id"].is_number_integer()) {
    a.news_id = NewsId{j["news_id"].get<std::int64_t>()};
  }
  const std::string date = first_string(j, {"published_date", "date", "scraped_date"});
  const auto parsed = Date::parse_lenient(date);
  if (!parsed) {
    log::warn(origin + ": unparseable date '" + date + "', skipped");
    return std::nullopt;
  }
  a.scraped_date = *parsed;
  a.title_markup = first_string(j, {"title", "news_title"});
  a.summary_markup = first_string(j, {"summary", "news_summary"});
  a.source_markup = first_string(j, {"content", "news_content", "html", "source_markup"});
  if (const std::string url = first_string(j, {"url", "source_url"}); !url.empty()) a.source_url = url;
  if (a.source_markup.empty()) {
    log::warn(origin + ": no content, skipped");
    return std::nullopt;
  }
  return in;
}

inline std::optional<std::string> meta_date(std::string_view html) {
  static const std::regex kPatterns[] = {
      std::regex(R"re(article:published_time"\s+content="([^"]+)")re", std::regex::icase),
      std::regex(R"re(<time[^>]*datetime="([^"]+)")re", std::regex::icase),
      std::regex(R"re(name="(?:pubdate|date)"\s+content="([^"]+)")re", std::regex::icase)};
  for (const auto& re : kPatterns) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(html.begin(), html.end(), m, re)) return m[1].str();
  }
  return std::nullopt;
}

}  // namespace detail

/// Reads raw scraped articles from a directory. Accepts `*.jsonl` (one
/// object per line), `*.json` (array of objects) and `*.html` files.
/// Files are visited in lexicographic order so ids assigned downstream are
/// stable.
inline std::vector<RawInput> read_raw_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorKind::Io, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RawInput> out;
  for (const auto& path : files) {
    const std::string ext = text::ascii_lower(path.extension().string());
    std::ifstream in(path, std::ios::binary);
    if (ext == ".jsonl") {
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (text::is_blank(line)) continue;
        const std::string origin = path.string() + ":" + std::to_string(lineno);
        try {
          if (auto r = detail::raw_from_json(nlohmann::json::parse(line), origin)) out.push_back(std::move(*r));
        } catch (const nlohmann::json::exception& e) {
          log::warn(origin + ": " + e.what());
        }
      }
    } else if (ext == ".json") {
      try {
        const auto j = nlohmann::json::parse(in);
        const auto& arr = j.is_array() ? j : nlohmann::json::array({j});
        for (std::size_t i = 0; i < arr.size(); ++i) {
          if (auto r = detail::raw_from_json(arr[i], path.string() + "[" + std::to_string(i) + "]")) {
            out.push_back(std::move(*r));
          }
        }
      } catch (const nlohmann::json::exception& e) {
        log::warn(path.string() + ": " + e.what());
      }
    } else if (ext == ".html" || ext == ".htm") {
      std::string html((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const auto date_text = detail::meta_date(html);
      const auto date = date_text ? Date::parse_lenient(*date_text) : std::nullopt;
      if (!date) {
        log::warn(path.string() + ": no publication date found, skipped");
        continue;
      }
      RawInput r;
      r.origin = path.string();
      r.article.scraped_date = *date;
      r.article.source_markup = std::move(html);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace scorerag::corpus
