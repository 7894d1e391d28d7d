// Copyright 2026 The dvckit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dvckit/error.hpp"
#include "dvckit/rng.hpp"
#include "dvckit/core/types.hpp"
#include "dvckit/core/corpus.hpp"
#include "dvckit/core/response.hpp"
#include "dvckit/text/tokenize.hpp"
#include "dvckit/text/stemmer.hpp"
#include "dvckit/text/meteor.hpp"
#include "dvckit/text/cider.hpp"
#include "dvckit/text/similarity.hpp"
#include "dvckit/eval/iou.hpp"
#include "dvckit/eval/tiou.hpp"
#include "dvckit/eval/soda.hpp"
#include "dvckit/eval/grounding.hpp"
#include "dvckit/eval/counts.hpp"
#include "dvckit/eval/corpus_eval.hpp"
#include "dvckit/cotasks/render.hpp"
#include "dvckit/cotasks/dataset.hpp"
#include "dvckit/mdpo/scoring.hpp"
#include "dvckit/mdpo/pairs.hpp"
#include "dvckit/mdpo/objective.hpp"
#include "dvckit/synth.hpp"
#include "dvckit/toylab/policy.hpp"
#include "dvckit/toylab/experiment.hpp"
#include "dvckit/io/json_format.hpp"
#include "dvckit/io/files.hpp"
#include "dvckit/io/records.hpp"
