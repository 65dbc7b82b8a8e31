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

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scorerag/generator.hpp"

namespace scorerag::test {

struct CitationFixture {
  std::string name;
  std::string body;
  int ref_count = 0;
  std::vector<generation::Citation> citations;
  std::vector<std::string> warnings;
};

/// Expected positions are located by searching for the literal token text
/// (its nth occurrence), independent of the scanner.
inline std::vector<CitationFixture> load_citation_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto j = nlohmann::json::parse(in);
  std::vector<CitationFixture> out;
  for (const auto& f : j) {
    CitationFixture fx{f.at("name"), f.at("body"), f.at("ref_count"), {}, f.at("warnings")};
    for (const auto& c : f.at("citations")) {
      const std::string token = c.at("token");
      std::size_t pos = fx.body.find(token);
      for (int n = c.at("nth").get<int>(); n > 0 && pos != std::string::npos; --n) pos = fx.body.find(token, pos + 1);
      if (pos == std::string::npos) throw std::runtime_error(fx.name + ": token not in body");
      fx.citations.push_back(generation::Citation{pos, c.at("ref").get<int>()});
    }
    out.push_back(std::move(fx));
  }
  return out;
}

}  // namespace scorerag::test
