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

#include <filesystem>
#include <random>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "scorerag/corpus.hpp"
#include "test_util.hpp"

using namespace scorerag;
using corpus::clean;

namespace {

// Independent HTML-to-text pass built from std::regex substitutions. It
// shares nothing with the scanner-based cleaner.
std::string reference_html_to_text(std::string s, const corpus::CleanerConfig& cfg) {
  static const std::regex kComment(R"(<!--[\s\S]*?-->)");
  static const std::regex kBlock(
      R"(<(script|style|noscript|iframe|template|head)(?![A-Za-z0-9-])[\s\S]*?</\1[^>]*>)",
      std::regex::icase);
  static const std::regex kParaTag(
      R"(</?(p|div|section|article|header|footer|h[1-6]|li|ul|ol|tr|table|blockquote|figure|figcaption|aside|nav|main|pre|hr|dl|dt|dd)(?![A-Za-z0-9])[^>]*>)",
      std::regex::icase);
  static const std::regex kBr(R"(</?br(?![A-Za-z0-9])[^>]*>)", std::regex::icase);
  static const std::regex kCell(R"(</?(td|th)(?![A-Za-z0-9])[^>]*>)", std::regex::icase);
  static const std::regex kAnyTag(R"(<[a-zA-Z/!][^>]*>)");
  const std::vector<std::pair<std::string, std::string>> entities = {
      {"&nbsp;", " "}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"},
      {"&hellip;", "…"}, {"&#20013;", "中"}, {"&amp;", "&"}};
  auto pass = [&](std::string t) {
    t = std::regex_replace(t, kComment, " ");
    t = std::regex_replace(t, kBlock, " ");
    t = std::regex_replace(t, kParaTag, "\n\n");
    t = std::regex_replace(t, kBr, "\n");
    t = std::regex_replace(t, kCell, " ");
    t = std::regex_replace(t, kAnyTag, "");
    // Single left-to-right entity pass.
    std::string decoded;
    for (std::size_t i = 0; i < t.size();) {
      bool hit = false;
      for (const auto& [from, to] : entities) {
        if (t.compare(i, from.size(), from) == 0) {
          decoded += to;
          i += from.size();
          hit = true;
          break;
        }
      }
      if (!hit) decoded += t[i++];
    }
    t = decoded;
    std::string kept;
    std::size_t start = 0;
    while (true) {
      auto nl = t.find('\n', start);
      std::string line = t.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
      bool ad = false;
      for (const auto& m : cfg.ad_markers) ad = ad || line.find(m) != std::string::npos;
      if (!ad) kept += line;
      if (nl == std::string::npos) break;
      kept += '\n';
      start = nl + 1;
    }
    // Ideographic space to ASCII, then collapse ASCII whitespace runs.
    kept = std::regex_replace(kept, std::regex("\xE3\x80\x80"), " ");
    std::string out;
    for (std::size_t i = 0; i < kept.size();) {
      if (!std::isspace(static_cast<unsigned char>(kept[i]))) {
        out += kept[i++];
        continue;
      }
      int nl = 0;
      while (i < kept.size() && std::isspace(static_cast<unsigned char>(kept[i]))) nl += kept[i++] == '\n';
      out += nl >= 2 ? "\n\n" : " ";
    }
    const auto b = out.find_first_not_of(" \n");
    if (b == std::string::npos) return std::string();
    const auto e = out.find_last_not_of(" \n");
    return out.substr(b, e - b + 1);
  };
  std::string cur = pass(s);
  for (int i = 0; i < 32; ++i) {
    std::string next = pass(cur);
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

const std::vector<std::string>& fixture_markup() {
  static const std::vector<std::string> kFixtures = {
      "<p>Hello</p>",
      "A<script>x()</script>B",
      "<html><head><title>t</title></head><body><h1>美官員會談</h1><p>第一段。</p><p>第二段。</p></body></html>",
      "<div class=\"ad\">【廣告】買一送一</div><p>（德國之聲中文網）美國官員表示，會談有實質性。</p>",
      "<p>  多個   空白 \t 與\n單一換行  </p>",
      "<p>段落一</p>\n\n\n<p>段落二</p><br><br>段落三",
      "Tom &amp; Jerry &lt;b&gt;bold&lt;/b&gt; &nbsp; &hellip;",
      "<!-- comment <p>hidden</p> --><p>visible</p>",
      "<style>.a{color:red}</style><p>樣式之後</p><SCRIPT type=x>alert(1)</SCRIPT>結尾",
      "<table><tr><td>欄一</td><td>欄二</td></tr></table>",
      "&#20013;文 and <span>inline</span>text",
      "\xE3\x80\x80\xE3\x80\x80全形空白開頭的段落。<br/>次行",
      "a < b and c > d",
      "延伸閱讀：其他新聞\n正文內容在這裡",
  };
  return kFixtures;
}

}  // namespace

TEST(Clean, StripsSingleTag) { EXPECT_EQ(clean("<p>Hello</p>"), "Hello"); }

TEST(Clean, ScriptBlockBecomesSeparator) { EXPECT_EQ(clean("A<script>x()</script>B"), "A B"); }

TEST(Clean, WhitespaceOnlyIsEmptyAfterCleaning) {
  EXPECT_ERROR_KIND(clean("   "), ErrorKind::EmptyAfterCleaning);
  EXPECT_ERROR_KIND(clean("<div><script>x</script></div>"), ErrorKind::EmptyAfterCleaning);
}

TEST(Clean, PreservesParagraphBreaks) {
  EXPECT_EQ(clean("<p>一</p><p>二</p>"), "一\n\n二");
  EXPECT_EQ(clean("一\n二"), "一 二");
  EXPECT_EQ(clean("一\n  \n二"), "一\n\n二");
}

TEST(Clean, DropsConfiguredAdLines) {
  corpus::CleanerConfig cfg;
  cfg.ad_markers = {"SPONSOR"};
  cfg.ad_patterns = {R"(^\s*買\S+送)"};
  EXPECT_EQ(clean("<p>新聞</p><p>SPONSOR: x</p><p>買一送一</p><p>結尾</p>", cfg), "新聞\n\n結尾");
}

TEST(Clean, BadAdPatternIsInvalidConfig) {
  corpus::CleanerConfig cfg;
  cfg.ad_patterns = {"("};
  EXPECT_ERROR_KIND(clean("x", cfg), ErrorKind::InvalidConfig);
}

TEST(Clean, EncodedMarkupNeverSurvives) {
  const std::string out = clean("x &lt;p&gt;y&lt;/p&gt; &amp;lt;b&amp;gt;z");
  EXPECT_FALSE(corpus::contains_html_tag(out)) << out;
  EXPECT_EQ(out, "x\n\ny\n\nz");
}

TEST(Clean, MatchesReferenceConverterOnFixtureCorpus) {
  const corpus::CleanerConfig cfg;
  for (const auto& markup : fixture_markup()) {
    EXPECT_EQ(corpus::clean_or_empty(markup, cfg), reference_html_to_text(markup, cfg)) << markup;
  }
}

TEST(Clean, IdempotentAndTagFreeOnRandomMarkup) {
  std::mt19937_64 rng(20240201);
  const std::vector<std::string> atoms = {
      "<p>", "</p>", "<div class=x>", "</div>", "<br>", "<b>", "</b>", "<script>var a=1;</script>",
      "&amp;", "&lt;", "&gt;", "&nbsp;", "&#x4E2D;", "&", "<", ">", " ", "  ", "\n", "\n\n", "\t",
      "美", "中", "官員", "會談", "，", "。", "abc", "42", "【廣告】", "<!-- c -->", "<a href='u'>",
      "</a>", "\xE3\x80\x80", "&lt;p&gt;", "&amp;lt;i&amp;gt;"};
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string markup;
    for (int i = len(rng); i > 0; --i) markup += atoms[pick(rng)];
    const std::string once = corpus::clean_or_empty(markup);
    EXPECT_EQ(corpus::clean_or_empty(once), once) << markup;
    EXPECT_FALSE(corpus::contains_html_tag(once)) << markup;
  }
}

TEST(Clean, InvalidUtf8IsReplaced) {
  const std::string out = clean("ok\xFF\xFEok");
  EXPECT_EQ(out, "ok\xEF\xBF\xBD\xEF\xBF\xBDok");
}

TEST(BuildRecord, TitleFallsBackToHeading) {
  corpus::RawArticle raw;
  raw.source_markup = "<html><head><title>站名</title></head><body><h1>頭條標題</h1><p>內文</p></body></html>";
  raw.scraped_date = Date::of(2020, 5, 6);
  const NewsRecord r = corpus::build_record(raw, NewsId{7});
  EXPECT_EQ(r.title, "頭條標題");
  EXPECT_EQ(r.content, "頭條標題\n\n內文");
  EXPECT_EQ(r.summary, "");
  EXPECT_EQ(r.published_date.iso(), "2020-05-06");
}

TEST(Date, LenientFormatsNormalizeToIso) {
  EXPECT_EQ(Date::parse_lenient("2024-2-1")->iso(), "2024-02-01");
  EXPECT_EQ(Date::parse_lenient("2024/02/01")->iso(), "2024-02-01");
  EXPECT_EQ(Date::parse_lenient("2024年2月1日")->iso(), "2024-02-01");
  EXPECT_EQ(Date::parse_lenient("2024-02-01T08:30:00Z")->iso(), "2024-02-01");
  EXPECT_FALSE(Date::parse_lenient("2024-02-30").has_value());
  EXPECT_FALSE(Date::parse_lenient("yesterday").has_value());
  EXPECT_ERROR_KIND(Date::parse_iso("2024-2-1"), ErrorKind::InvalidInput);
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

TEST(Store, RoutesByYearAndRoundTrips) {
  corpus::JsonlDocumentStore store;
  const NewsRecord r = test::table1_row0();
  const auto receipt = store.put(r);
  EXPECT_EQ(receipt.partition_year, 2024);
  EXPECT_EQ(store.get_full(NewsId{2384857}), r);
  EXPECT_EQ(store.get_full(NewsId{2384857}).title, "美官員：與中方芬太尼會談有意義但尚須更多措施");

  NewsRecord old = test::make_record(11, "2018-01-05", "舊聞", "內容");
  EXPECT_EQ(store.put(old).partition_year, 2018);
  EXPECT_EQ(store.years(), (std::vector<int>{2018, 2024}));
  EXPECT_EQ(store.partition(2018).records.size(), 1u);
}

TEST(Store, DuplicateIdRejected) {
  corpus::JsonlDocumentStore store;
  store.put(test::table1_row0());
  EXPECT_ERROR_KIND(store.put(test::table1_row0()), ErrorKind::DuplicateId);
  EXPECT_EQ(store.size(), 1u);
}

TEST(Store, UnknownIdNotFound) {
  corpus::JsonlDocumentStore store;
  EXPECT_ERROR_KIND(store.get_full(NewsId{999999999}), ErrorKind::NotFound);
}

TEST(Store, RejectsRecordsViolatingInvariants) {
  corpus::JsonlDocumentStore store;
  EXPECT_ERROR_KIND(store.put(test::make_record(1, "2020-01-01", "", "x")), ErrorKind::InvalidInput);
  EXPECT_ERROR_KIND(store.put(test::make_record(2, "2020-01-01", "t", "<p>x</p>")), ErrorKind::InvalidInput);
}

TEST(Store, PersistsOneFilePerYear) {
  test::TempDir dir;
  {
    corpus::JsonlDocumentStore store(dir.path());
    store.put(test::table1_row0());
    store.put(test::make_record(5, "2018-03-04", "標題", "內容\n\n第二段", "摘要"));
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "news_2024.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "news_2018.jsonl"));
  const std::string line = test::read_file(dir.path() / "news_2018.jsonl");
  EXPECT_EQ(line,
            "{\"news_id\":5,\"published_date\":\"2018-03-04\",\"title\":\"標題\",\"summary\":\"摘要\","
            "\"content\":\"內容\\n\\n第二段\"}\n");

  corpus::JsonlDocumentStore reopened(dir.path());
  EXPECT_EQ(reopened.size(), 2u);
  EXPECT_EQ(reopened.get_full(NewsId{2384857}), test::table1_row0());
  EXPECT_ERROR_KIND(reopened.put(test::table1_row0()), ErrorKind::DuplicateId);
}

TEST(Store, MisfiledRecordRejectedOnLoad) {
  test::TempDir dir;
  test::write_file(dir.path() / "news_2019.jsonl",
                   corpus::dump_line(corpus::to_json(test::table1_row0())) + "\n");
  EXPECT_ERROR_KIND(corpus::JsonlDocumentStore{dir.path()}, ErrorKind::InvalidInput);
}

TEST(Store, RandomRecordsRoundTripAndStayPartitioned) {
  std::mt19937 rng(7);
  corpus::JsonlDocumentStore store;
  std::vector<NewsRecord> all;
  for (int i = 0; i < 300; ++i) {
    const int year = 2018 + static_cast<int>(rng() % 7);
    const unsigned month = 1 + rng() % 12;
    const unsigned day = 1 + rng() % 28;
    NewsRecord r{NewsId{1000 + i}, Date::of(year, month, day), "標題" + std::to_string(i),
                 i % 3 ? "摘要" : "", "內容 " + std::to_string(rng())};
    store.put(r);
    all.push_back(r);
  }
  for (const auto& r : all) EXPECT_EQ(store.get_full(r.news_id), r);
  for (int year : store.years()) {
    for (const auto& r : store.partition(year).records) EXPECT_EQ(r.published_date.year(), year);
  }
}

TEST(Store, ConcurrentReadersSeeConsistentRecords) {
  corpus::JsonlDocumentStore store;
  for (int i = 0; i < 200; ++i) store.put(test::make_record(i + 1, "2021-06-01", "t", "c" + std::to_string(i)));
  std::vector<std::thread> readers;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        if (store.get_full(NewsId{i + 1}).content != "c" + std::to_string(i)) ++mismatches;
      }
    });
  }
  for (int i = 0; i < 50; ++i) store.put(test::make_record(1000 + i, "2022-01-01", "t", "w"));
  for (auto& th : readers) th.join();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_EQ(store.size(), 250u);
}

TEST(RawInput, ReadsJsonlJsonAndHtml) {
  test::TempDir dir;
  test::write_file(dir.path() / "a.jsonl",
                   "{\"news_id\": 3, \"date\": \"2023/7/9\", \"title\": \"<b>T</b>\", \"content\": \"<p>C</p>\"}\n"
                   "{\"date\": \"bad\", \"title\": \"x\", \"content\": \"y\"}\n");
  test::write_file(dir.path() / "b.json", "[{\"published_date\": \"2019-01-02\", \"title\": \"U\", \"html\": \"V\"}]");
  test::write_file(dir.path() / "c.html",
                   "<html><head><meta property=\"article:published_time\" content=\"2022-10-11T09:00:00+08:00\">"
                   "</head><body><h1>H</h1><p>body</p></body></html>");
  const auto raws = corpus::read_raw_directory(dir.path());
  ASSERT_EQ(raws.size(), 3u);
  EXPECT_EQ(raws[0].article.news_id->value, 3);
  EXPECT_EQ(raws[0].article.scraped_date.iso(), "2023-07-09");
  EXPECT_EQ(raws[1].article.scraped_date.iso(), "2019-01-02");
  EXPECT_EQ(raws[2].article.scraped_date.iso(), "2022-10-11");
  EXPECT_EQ(corpus::build_record(raws[2].article, NewsId{9}).title, "H");
}
