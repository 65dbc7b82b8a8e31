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

// Command-line front end: ingest, index, generate, judge, evaluate, serve.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <pthread.h>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "scorerag/scorerag.hpp"

namespace {

using namespace scorerag;
using nlohmann::ordered_json;

struct Options {
  std::string config_path = "scorerag.json";
  bool json = false;
  bool verbose = false;
};

void print_json(const ordered_json& j) { std::cout << j.dump(2, ' ', false, ordered_json::error_handler_t::replace) << "\n"; }

config::PipelineConfig load_config(const Options& o) { return config::load(o.config_path); }

int cmd_ingest(const Options& o, const std::string& raw_dir) {
  const auto cfg = load_config(o);
  corpus::JsonlDocumentStore store(cfg.paths.corpus_dir);
  const auto report = pipeline::ingest(raw_dir, store);
  if (o.json) {
    print_json({{"read", report.read},
                {"stored", report.stored},
                {"skipped", report.skipped},
                {"corpus_size", store.size()},
                {"warnings", report.warnings}});
  } else {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "ingested " << report.stored << " of " << report.read << " articles (" << report.skipped
              << " skipped); corpus now holds " << store.size() << "\n";
  }
  return 0;
}

int cmd_index(const Options& o) {
  const auto cfg = load_config(o);
  if (!std::filesystem::is_directory(cfg.paths.corpus_dir)) {
    fail(ErrorKind::EmptyCorpus, "corpus directory " + cfg.paths.corpus_dir.string() + " does not exist; run ingest");
  }
  corpus::JsonlDocumentStore store(cfg.paths.corpus_dir);
  auto embedder = pipeline::make_embedder(cfg);
  const std::size_t n = pipeline::build_and_save_index(cfg, store, *embedder);
  if (o.json) {
    print_json({{"articles", store.size()}, {"chunks", n}, {"index_dir", cfg.paths.index_dir.string()}});
  } else {
    std::cout << "indexed " << n << " chunks from " << store.size() << " articles into "
              << cfg.paths.index_dir.string() << "\n";
  }
  return 0;
}

int cmd_generate(const Options& o, const std::string& query, const pipeline::Overrides& overrides,
                 const std::string& transcript_path) {
  const auto cfg = load_config(o);
  const auto engine = pipeline::Engine::open(cfg);
  llm::Transcript transcript;
  const auto resp = engine.run(query, overrides, transcript_path.empty() ? nullptr : &transcript);
  if (!transcript_path.empty()) {
    std::ofstream out(transcript_path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + transcript_path);
    out << transcript.to_json().dump(2) << "\n";
  }
  if (o.json) {
    print_json(pipeline::to_json(resp));
    return 0;
  }
  std::cout << resp.article.body << "\n";
  if (!resp.article.references.empty()) {
    std::cout << "\nReferences\n";
    for (const auto& r : resp.article.references) {
      std::cout << "  [" << r.ref_number << "] " << r.published_date.iso() << "  " << r.title << "  (score "
                << generation::format_score(r.consistency_score) << ")\n";
    }
  }
  for (const auto& w : resp.article.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

// Scores generated articles with the LLM judge and writes a scores CSV
// that `evaluate` reads. Input is JSONL: {"article_id", "system", "body"}.
int cmd_judge(const Options& o, const std::string& articles_path, const std::string& out_path) {
  const auto cfg = load_config(o);
  const auto factory = pipeline::make_gateway_factory(cfg);
  auto llm = factory();
  std::ifstream in(articles_path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + articles_path);
  std::vector<std::string> warnings;
  std::vector<eval::EvaluationScore> scores;
  const eval::JudgeConfig jc{cfg.language, cfg.evaluation_temperature};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line)) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("article_id") || !j.contains("system") ||
        !j.contains("body")) {
      fail(ErrorKind::InvalidInput, articles_path + ":" + std::to_string(lineno) +
                                        ": expected {\"article_id\", \"system\", \"body\"}");
    }
    const std::string id = j["article_id"].is_string() ? j["article_id"].get<std::string>() : j["article_id"].dump();
    scores.push_back(eval::llm_judge(*llm, id, j["system"].get<std::string>(), j["body"].get<std::string>(),
                                           jc, warnings));
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + out_path);
  out << "article_id,system,rater,coherence,accuracy,professionalism,informativeness\n";
  for (const auto& s : scores) {
    out << s.article_id << "," << s.system_label << "," << s.rater;
    for (std::size_t c = 0; c < 4; ++c) {
      out << ",";
      if (s.criteria) out << (*s.criteria)[c];
    }
    out << "\n";
  }
  if (o.json) {
    print_json(ordered_json{{"judged", scores.size()}, {"out", out_path}, {"warnings", warnings}});
  } else {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "judged " << scores.size() << " articles into " << out_path << "\n";
  }
  return 0;
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int cmd_evaluate(const Options& o, const std::string& scores_path, const std::vector<std::string>& systems,
                 const std::string& report_path) {
  const auto all = eval::read_scores_csv(scores_path);
  const auto report = eval::compare_systems(all, systems.at(0), systems.at(1));
  const auto j = eval::to_json(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + report_path);
    out << j.dump(2) << "\n";
  }
  if (o.json) {
    print_json(j);
    return 0;
  }
  std::printf("%zu paired articles, %s vs %s\n\n", report.n_pairs, report.a.label.c_str(), report.b.label.c_str());
  std::printf("%-16s %10s %10s %10s %9s %10s\n", "metric", report.a.label.c_str(), report.b.label.c_str(), "diff",
              "t", "p");
  for (const char* m : eval::kMetrics) {
    const auto& t = report.tests.at(m);
    std::printf("%-16s %10s %10s %10s %9s %10s\n", m, fmt(report.a.means.at(m)).c_str(),
                fmt(report.b.means.at(m)).c_str(), fmt(t.mean_difference, "%+.2f").c_str(),
                t.t_statistic ? fmt(*t.t_statistic, "%.3f").c_str() : "-",
                t.p_value ? fmt(*t.p_value, "%.4g").c_str() : "-");
  }
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

int cmd_serve(const Options& o, const std::optional<std::string>& host, const std::optional<int>& port) {
  auto cfg = load_config(o);
  if (host) cfg.service.host = *host;
  if (port) cfg.service.port = *port;
  const auto engine = pipeline::Engine::open(cfg);
  service::Server server(engine);

  // Block SIGINT/SIGTERM in every thread and wait for them on one.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  const int bound = server.bind(cfg.service.host, cfg.service.port);
  std::cout << "listening on http://" << cfg.service.host << ":" << bound << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  server.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int report_error(const Options& o, const Error& e) {
  const int code = service::exit_code(e.kind());
  if (o.json) {
    auto j = service::error_json(e);
    j["exit_code"] = code;
    print_json(j);
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score-guided retrieval-augmented news generation"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-c,--config", o.config_path, "Config file")->capture_default_str();
  app.add_flag("--json", o.json, "Machine-readable output and errors");
  app.add_flag("-v,--verbose", o.verbose, "Log backend warnings as they happen");
  app.fallthrough();

  std::string raw_dir;
  auto* ingest = app.add_subcommand("ingest", "Clean raw articles into the corpus");
  ingest->add_option("raw_dir", raw_dir, "Directory of .jsonl/.json/.html files")->required();

  auto* index = app.add_subcommand("index", "Chunk and embed the corpus into the vector index");

  std::string query, transcript;
  std::optional<std::size_t> k;
  std::optional<double> threshold;
  auto* generate = app.add_subcommand("generate", "Generate an article for a query");
  generate->add_option("query", query, "Topic to write about")->required();
  generate->add_option("--k", k, "Articles to retrieve (1-50)");
  generate->add_option("--threshold", threshold, "Minimum mean consistency score (0-100)");
  generate->add_option("--transcript", transcript, "Write every LLM exchange to this JSON file");

  std::string articles, out_csv;
  auto* judge = app.add_subcommand("judge", "Score generated articles with the LLM judge");
  judge->add_option("--articles", articles, "JSONL of {article_id, system, body}")->required();
  judge->add_option("--out", out_csv, "Scores CSV to write")->required();

  std::string scores, report;
  std::vector<std::string> systems;
  auto* evaluate = app.add_subcommand("evaluate", "Compare two systems on a scores CSV");
  evaluate->add_option("--scores", scores, "Scores CSV")->required();
  evaluate->add_option("--compare", systems, "Two system labels, A then B")->required()->expected(2);
  evaluate->add_option("--report", report, "Also write the JSON report here");

  std::optional<std::string> host;
  std::optional<int> port;
  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port; 0 picks a free one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
    if (o.json) {
      print_json({{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}, {"exit_code", 3}});
    } else {
      app.exit(e);
    }
    return 3;
  }

  log::set_level(o.verbose ? log::Level::Warn : log::Level::Error);
  try {
    if (*ingest) return cmd_ingest(o, raw_dir);
    if (*index) return cmd_index(o);
    if (*generate) return cmd_generate(o, query, pipeline::Overrides{k, threshold}, transcript);
    if (*judge) return cmd_judge(o, articles, out_csv);
    if (*evaluate) return cmd_evaluate(o, scores, systems, report);
    if (*serve) return cmd_serve(o, host, port);
  } catch (const Error& e) {
    return report_error(o, e);
  } catch (const std::exception& e) {
    if (o.json) {
      print_json({{"error", {{"kind", "Internal"}, {"message", e.what()}}}, {"exit_code", 1}});
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  return 1;
}
