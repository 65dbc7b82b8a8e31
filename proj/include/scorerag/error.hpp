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

#include <stdexcept>
#include <string>
#include <string_view>

namespace scorerag {

/// Failure classes surfaced by every module. The CLI maps them onto exit
/// codes, the HTTP service onto status codes.
enum class ErrorKind {
  InvalidInput,
  InvalidConfig,
  // corpus
  EmptyAfterCleaning,
  DuplicateId,
  NotFound,
  EmptyCorpus,
  // vector index
  DimensionMismatch,
  DuplicateChunkId,
  EmptyIndex,
  CorruptIndexFile,
  // backends
  BackendUnreachable,
  BackendRefused,
  Timeout,
  // scoring / summarizing / generation
  UnparseableScore,
  OutOfRange,
  EmptySummary,
  AlignmentError,
  GenerationBackendError,
  // evaluation
  UnparseableScores,
  MismatchedIds,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::EmptyAfterCleaning: return "EmptyAfterCleaning";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DuplicateChunkId: return "DuplicateChunkId";
    case ErrorKind::EmptyIndex: return "EmptyIndex";
    case ErrorKind::CorruptIndexFile: return "CorruptIndexFile";
    case ErrorKind::BackendUnreachable: return "BackendUnreachable";
    case ErrorKind::BackendRefused: return "BackendRefused";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::UnparseableScore: return "UnparseableScore";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptySummary: return "EmptySummary";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::GenerationBackendError: return "GenerationBackendError";
    case ErrorKind::UnparseableScores: return "UnparseableScores";
    case ErrorKind::MismatchedIds: return "MismatchedIds";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace scorerag
