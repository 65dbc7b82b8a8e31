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
#include <httplib.h>

#include <thread>

#include "demo_engine.hpp"
#include "scorerag/server.hpp"
#include "test_util.hpp"

namespace scorerag {
namespace {

using nlohmann::json;

// Serves an engine on a free port for the life of the object.
class RunningServer {
 public:
  explicit RunningServer(pipeline::Engine engine) : engine_(std::move(engine)), server_(engine_) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.listen(); });
    server_.wait_until_ready();
  }
  ~RunningServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  const pipeline::Engine& engine() const { return engine_; }

 private:
  pipeline::Engine engine_;
  service::Server server_;
  int port_ = 0;
  std::thread thread_;
};

class ServerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    log::set_level(log::Level::Error);
    server_ = new RunningServer(test::demo_engine());
  }
  static void TearDownTestSuite() {
    delete server_;
    server_ = nullptr;
    log::set_level(log::Level::Warn);
  }

  static httplib::Result post(const json& body) {
    return server_->client().Post("/api/generate", body.dump(), "application/json");
  }

  static RunningServer* server_;
};

RunningServer* ServerTest::server_ = nullptr;

TEST_F(ServerTest, HealthReportsCorpusAndBackends) {
  auto res = server_->client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  const auto j = json::parse(res->body);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["articles"], 20);
  EXPECT_EQ(j["chunks"], 20);
  EXPECT_EQ(j["embedding"], "mock");
  EXPECT_EQ(j["llm"], "stub");
  EXPECT_EQ(j["prompt_version"], prompts::kVersion);
}

TEST_F(ServerTest, ConfigIsTheRedactedEffectiveConfig) {
  auto res = server_->client().Get("/api/config");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body), json::parse(config::to_redacted_json(server_->engine().config()).dump()));
  EXPECT_EQ(json::parse(res->body)["retrieval"]["k"], 4);
}

TEST_F(ServerTest, GenerateMatchesTheEngine) {
  auto res = post({{"query", test::kDemoQuery}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, pipeline::to_json(server_->engine().run(test::kDemoQuery)).dump());
  EXPECT_NE(res->get_header_value("Content-Type").find("application/json"), std::string::npos);
}

TEST_F(ServerTest, GenerateAppliesOverrides) {
  auto res = post({{"query", test::kDemoQuery}, {"k", 1}, {"threshold", 0}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const auto j = json::parse(res->body);
  EXPECT_EQ(j["settings"]["k"], 1);
  EXPECT_EQ(j["settings"]["threshold"], 0.0);
  EXPECT_EQ(j["scored_articles"].size(), 1u);

  res = post({{"query", test::kDemoQuery}, {"threshold", 100}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["warnings"][0], generation::kNoReferencesWarning);
}

TEST_F(ServerTest, BadRequestsAre400WithErrorJson) {
  const std::vector<std::string> bodies = {
      "not json",
      "[1, 2]",
      R"({})",
      R"({"query": 3})",
      R"({"query": "   "})",
      R"({"query": "x", "k": 0})",
      R"({"query": "x", "k": 51})",
      R"({"query": "x", "k": "4"})",
      R"({"query": "x", "k": 2.5})",
      R"({"query": "x", "threshold": 100.5})",
      R"({"query": "x", "threshold": -1})",
      R"({"query": "x", "threshold": "high"})",
  };
  for (const auto& body : bodies) {
    auto res = server_->client().Post("/api/generate", body, "application/json");
    ASSERT_TRUE(res) << body;
    EXPECT_EQ(res->status, 400) << body;
    const auto j = json::parse(res->body);
    EXPECT_EQ(j["error"]["kind"], "InvalidInput") << body;
    EXPECT_FALSE(j["error"]["message"].get<std::string>().empty());
  }
}

TEST_F(ServerTest, PreflightAllowsCrossOriginPosts) {
  auto res = server_->client().Options("/api/generate");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_NE(res->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);
}

TEST_F(ServerTest, UnknownRoutesAre404) {
  auto res = server_->client().Get("/api/nothing");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(ServerTest, ConcurrentRequestsAgree) {
  const std::string expected = pipeline::to_json(server_->engine().run(test::kDemoQuery)).dump();
  std::vector<std::string> bodies(6);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    threads.emplace_back([&, i] {
      if (auto res = post({{"query", test::kDemoQuery}})) bodies[i] = res->body;
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& b : bodies) EXPECT_EQ(b, expected);
}

class RefusingGateway final : public llm::LlmGateway {
 public:
  std::string complete(const llm::ChatRequest& r) override {
    if (r.tag == llm::tags::kGenerate) fail(ErrorKind::BackendUnreachable, "connection refused");
    return r.tag == llm::tags::kJudge ? "80" : "摘要";
  }
  std::string name() const override { return "refusing"; }
};

TEST(ServerErrors, BackendFailureIs502WithStageAndPartial) {
  log::set_level(log::Level::Error);
  RunningServer srv(test::demo_engine([] { return std::make_unique<RefusingGateway>(); }));
  auto res = srv.client().Post("/api/generate", json{{"query", test::kDemoQuery}}.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 502);
  const auto j = json::parse(res->body);
  EXPECT_EQ(j["error"]["kind"], "GenerationBackendError");
  EXPECT_EQ(j["error"]["stage"], "generate");
  EXPECT_EQ(j["partial"]["references"].size(), 4u);
  log::set_level(log::Level::Warn);
}

TEST(ServerErrors, StatusMapping) {
  using service::http_status;
  EXPECT_EQ(http_status(ErrorKind::InvalidInput), 400);
  EXPECT_EQ(http_status(ErrorKind::OutOfRange), 400);
  EXPECT_EQ(http_status(ErrorKind::EmptyCorpus), 503);
  EXPECT_EQ(http_status(ErrorKind::EmptyIndex), 503);
  EXPECT_EQ(http_status(ErrorKind::Timeout), 504);
  EXPECT_EQ(http_status(ErrorKind::BackendUnreachable), 502);
  EXPECT_EQ(http_status(ErrorKind::GenerationBackendError), 502);
  EXPECT_EQ(http_status(ErrorKind::AlignmentError), 500);
}

TEST(ServerErrors, ExitCodeMapping) {
  using service::exit_code;
  EXPECT_EQ(exit_code(ErrorKind::EmptyCorpus), 2);
  EXPECT_EQ(exit_code(ErrorKind::CorruptIndexFile), 2);
  EXPECT_EQ(exit_code(ErrorKind::InvalidConfig), 3);
  EXPECT_EQ(exit_code(ErrorKind::InvalidInput), 3);
  EXPECT_EQ(exit_code(ErrorKind::BackendRefused), 4);
  EXPECT_EQ(exit_code(ErrorKind::GenerationBackendError), 4);
  EXPECT_EQ(exit_code(ErrorKind::MismatchedIds), 5);
  EXPECT_EQ(exit_code(ErrorKind::AlignmentError), 1);
}

TEST(ServerErrors, BindFailureIsIoError) {
  const auto engine = test::demo_engine();
  service::Server s(engine);
  EXPECT_ERROR_KIND(s.bind("no-such-host.invalid", 0), ErrorKind::Io);
}

}  // namespace
}  // namespace scorerag
