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


// Everything in one include.

#pragma once

#include "scorerag/chunker.hpp"
#include "scorerag/config.hpp"
#include "scorerag/consistency.hpp"
#include "scorerag/corpus.hpp"
#include "scorerag/embedding.hpp"
#include "scorerag/embedding_http.hpp"
#include "scorerag/evaluation.hpp"
#include "scorerag/generator.hpp"
#include "scorerag/llm_gateway.hpp"
#include "scorerag/llm_http.hpp"
#include "scorerag/pipeline.hpp"
#include "scorerag/prompts.hpp"
#include "scorerag/retrieval.hpp"
#include "scorerag/server.hpp"
#include "scorerag/summarizer.hpp"
#include "scorerag/vector_index.hpp"
