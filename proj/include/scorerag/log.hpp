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

#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>

namespace scorerag::log {

enum class Level { Debug, Info, Warn, Error };

using Sink = std::function<void(Level, std::string_view)>;

namespace detail {

struct State {
  std::mutex mu;
  Level threshold = Level::Warn;
  Sink sink;
};

inline State& state() {
  static State s;
  return s;
}

inline std::string_view level_name(Level l) {
  switch (l) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
  }
  return "?";
}

}  // namespace detail

/// Replaces the sink; an empty function restores stderr output.
inline void set_sink(Sink sink) {
  auto& s = detail::state();
  std::lock_guard lock(s.mu);
  s.sink = std::move(sink);
}

inline void set_level(Level level) {
  auto& s = detail::state();
  std::lock_guard lock(s.mu);
  s.threshold = level;
}

inline void write(Level level, std::string_view message) {
  auto& s = detail::state();
  std::lock_guard lock(s.mu);
  if (level < s.threshold) return;
  if (s.sink) {
    s.sink(level, message);
  } else {
    std::cerr << "[scorerag " << detail::level_name(level) << "] " << message << '\n';
  }
}

inline void debug(std::string_view m) { write(Level::Debug, m); }
inline void info(std::string_view m) { write(Level::Info, m); }
inline void warn(std::string_view m) { write(Level::Warn, m); }
inline void error(std::string_view m) { write(Level::Error, m); }

}  // namespace scorerag::log
