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

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/core/types.hpp"
#include "dvckit/eval/corpus_eval.hpp"
#include "dvckit/eval/grounding.hpp"
#include "dvckit/io/files.hpp"
#include "dvckit/io/json_format.hpp"
#include "dvckit/mdpo/objective.hpp"
#include "dvckit/mdpo/pairs.hpp"
#include "dvckit/toylab/experiment.hpp"

namespace dvckit::io {

// Shortest decimal spelling of a threshold, used as an object key ("0.3").
inline std::string threshold_key(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Conversations

inline Json turn_to_json(const Turn& t) {
  Json j;
  j["from"] = t.speaker == Speaker::prompter ? "human" : "gpt";
  j["value"] = t.text;
  j["task"] = std::string(to_string(t.task));
  return j;
}

inline Json conversation_to_json(const Conversation& c) {
  Json j;
  j["video_id"] = c.video_id;
  j["path"] = std::string(to_string(c.path));
  j["turns"] = Json::array();
  for (const auto& t : c.turns) j["turns"].push_back(turn_to_json(t));
  return j;
}

inline std::string conversations_to_jsonl(std::span<const Conversation> convs) {
  std::string out;
  for (const auto& c : convs) out += to_text(conversation_to_json(c), -1) + "\n";
  return out;
}

// Ground-truth document for one reference set, in annotation order.
inline Json annotations_to_json(std::span<const VideoAnnotation> anns) {
  Json j = Json::object();
  for (const auto& a : anns) {
    Json stamps = Json::array(), sentences = Json::array();
    for (const auto& e : a.events) {
      stamps.push_back({e.interval.start, e.interval.end});
      sentences.push_back(e.caption);
    }
    j[a.video_id] = {{"duration", a.duration}, {"timestamps", stamps}, {"sentences", sentences}};
  }
  return j;
}

inline Json predictions_to_json(const PredictionSet& pred) {
  Json j = Json::object();
  for (const auto& [id, events] : pred) {
    Json items = Json::array();
    for (const auto& e : events)
      items.push_back({{"timestamp", {e.interval.start, e.interval.end}}, {"sentence", e.caption}});
    j[id] = items;
  }
  return j;
}

// ---------------------------------------------------------------------------
// JSON Lines input

namespace detail {

struct LineContext {
  const JsonlLine& line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line.offset, "line " + std::to_string(line.number));
  }

  const Json& field(const Json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  std::string string_field(const Json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  double number_field(const Json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }

  // Enum conversions raise ValidationError; report them against the line.
  template <class F>
  auto convert(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }
};

inline Json parse_line(const JsonlLine& line) {
  Json j;
  try {
    j = Json::parse(line.text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON (") + e.what() + ")",
                     line.offset + (e.byte == 0 ? 0 : e.byte - 1),
                     "line " + std::to_string(line.number));
  }
  if (!j.is_object())
    throw ParseError("each line must hold a JSON object", line.offset,
                     "line " + std::to_string(line.number));
  return j;
}

template <class T>
std::vector<T> parse_jsonl(std::string_view text,
                           const std::function<T(const Json&, const LineContext&)>& fn) {
  std::vector<T> out;
  for (const auto& line : jsonl_lines(text)) {
    const LineContext ctx{line};
    out.push_back(fn(parse_line(line), ctx));
  }
  return out;
}

inline Turn turn_from_json(const Json& j, const LineContext& ctx) {
  if (!j.is_object()) ctx.fail("history turns must be objects");
  Turn t;
  const auto from = ctx.string_field(j, "from");
  if (from == "human")
    t.speaker = Speaker::prompter;
  else if (from == "gpt")
    t.speaker = Speaker::responder;
  else
    ctx.fail("turn 'from' must be \"human\" or \"gpt\"");
  t.text = ctx.string_field(j, "value");
  if (j.contains("task"))
    t.task = ctx.convert([&] { return task_kind_from_string(ctx.string_field(j, "task")); });
  return t;
}

}  // namespace detail

// {"video_id", "path", "k", "prompt", "gt", "responses": [...], "history"?: [...]}
inline std::vector<mdpo::SampledTaskResponses> parse_sampled_responses(std::string_view text) {
  using detail::LineContext;
  return detail::parse_jsonl<mdpo::SampledTaskResponses>(
      text, [](const Json& j, const LineContext& ctx) {
        mdpo::SampledTaskResponses s;
        s.video_id = ctx.string_field(j, "video_id");
        s.path = ctx.convert([&] { return path_kind_from_string(ctx.string_field(j, "path")); });
        const auto& k = ctx.field(j, "k");
        if (!k.is_number_integer()) ctx.fail("field 'k' must be an integer");
        s.k = k.get<int>();
        s.prompt = ctx.string_field(j, "prompt");
        s.gt_response = ctx.string_field(j, "gt");
        const auto& responses = ctx.field(j, "responses");
        if (!responses.is_array()) ctx.fail("field 'responses' must be an array");
        for (const auto& r : responses) {
          if (!r.is_string()) ctx.fail("responses must be strings");
          s.responses.push_back(r.get<std::string>());
        }
        if (j.contains("history")) {
          const auto& h = j["history"];
          if (!h.is_array()) ctx.fail("field 'history' must be an array");
          for (const auto& t : h) s.history.push_back(detail::turn_from_json(t, ctx));
        }
        return s;
      });
}

// {"logp_theta_w", "logp_theta_l", "logp_ref_w", "logp_ref_l", "m_w", "m_l"}
inline std::vector<mdpo::PairLikelihoods> parse_pair_likelihoods(std::string_view text) {
  using detail::LineContext;
  return detail::parse_jsonl<mdpo::PairLikelihoods>(
      text, [](const Json& j, const LineContext& ctx) {
        mdpo::PairLikelihoods p{ctx.number_field(j, "logp_theta_w"),
                                ctx.number_field(j, "logp_theta_l"),
                                ctx.number_field(j, "logp_ref_w"),
                                ctx.number_field(j, "logp_ref_l"),
                                ctx.number_field(j, "m_w"),
                                ctx.number_field(j, "m_l")};
        ctx.convert([&] {
          mdpo::validate(p);
          return 0;
        });
        return p;
      });
}

// ---------------------------------------------------------------------------
// Preference pairs

inline Json scored_response_to_json(const mdpo::ScoredResponse& r) {
  Json j;
  j["text"] = r.text;
  j["index"] = r.index;
  j["metric"] = r.metric;
  return j;
}

inline Json pair_to_json(const mdpo::PreferencePair& p) {
  Json j;
  j["video_id"] = p.video_id;
  j["path"] = std::string(to_string(p.path));
  j["k"] = p.k;
  j["task"] = std::string(to_string(p.task));
  j["history"] = Json::array();
  for (const auto& t : p.history) j["history"].push_back(turn_to_json(t));
  j["prompt"] = p.prompt;
  j["preferred"] = scored_response_to_json(p.preferred);
  j["dispreferred"] = scored_response_to_json(p.dispreferred);
  j["m_w"] = p.m_w();
  j["m_l"] = p.m_l();
  j["gap"] = p.gap();
  return j;
}

inline std::string pairs_to_jsonl(std::span<const mdpo::PreferencePair> pairs) {
  std::string out;
  for (const auto& p : pairs) out += to_text(pair_to_json(p), -1) + "\n";
  return out;
}

inline Json pair_stats_to_json(const mdpo::PairStats& stats, double gamma,
                               std::size_t samples, std::size_t written) {
  Json j;
  j["gamma"] = gamma;
  j["samples"] = samples;
  j["pairs_written"] = written;
  Json sweep = Json::array();
  for (std::size_t g = 0; g < stats.gammas.size(); ++g) {
    Json row;
    row["gamma"] = stats.gammas[g];
    row["retained"] = stats.retained[g];
    sweep.push_back(row);
  }
  j["gamma_sweep"] = sweep;
  Json hist = Json::array();
  for (std::size_t b = 0; b < stats.gap_histogram.size(); ++b) {
    Json bin;
    bin["lo"] = static_cast<double>(b) * mdpo::PairStats::kBinWidth;
    bin["hi"] = static_cast<double>(b + 1) * mdpo::PairStats::kBinWidth;
    bin["count"] = stats.gap_histogram[b];
    hist.push_back(bin);
  }
  j["gap_histogram"] = hist;
  return j;
}

// ---------------------------------------------------------------------------
// Scorecards

inline Json tvg_to_json(const eval::TvgScorecard& s) {
  Json j;
  for (const auto& [k, v] : s.recall_at) j["r@" + threshold_key(k)] = v;
  j["miou"] = s.miou;
  j["query_count"] = s.query_count;
  return j;
}

inline Json eval_config_to_json(const eval::DvcEvalConfig& c) {
  Json j;
  j["tious"] = Json::array();
  for (double t : c.taus) j["tious"].push_back(t);
  j["recall_thresholds"] = Json::array();
  for (double t : c.recall_thresholds) j["recall_thresholds"].push_back(t);
  j["meteor"] = {{"alpha", c.meteor.alpha},
                 {"beta", c.meteor.beta_frag},
                 {"gamma", c.meteor.gamma_frag},
                 {"stemming", c.meteor.use_stemming}};
  j["cider_max_n"] = c.cider_max_n;
  return j;
}

inline Json scorecard_to_json(const eval::DvcScorecard& s, const eval::DvcEvalConfig& c) {
  Json j;
  j["soda_c"] = {{"precision", s.soda_c.precision},
                 {"recall", s.soda_c.recall},
                 {"f1", s.soda_c.f1}};
  j["meteor"] = s.meteor_tiou;
  j["cider"] = s.cider_tiou;
  Json per_tau = Json::object();
  for (const auto& t : s.per_tau)
    per_tau[threshold_key(t.tau)] = {{"meteor", t.meteor}, {"cider", t.cider}};
  j["per_tau"] = per_tau;
  j["tvg"] = tvg_to_json(s.tvg);
  j["count"] = {{"accuracy", s.count.accuracy},
                {"kl", s.count.kl},
                {"gt_variance", s.count.gt_variance}};
  j["video_count"] = s.video_count;
  j["reference_sets"] = s.reference_sets;
  j["config"] = eval_config_to_json(c);
  return j;
}

inline Json loss_result_to_json(const mdpo::LossBatchResult& r, double beta) {
  Json j;
  j["mode"] = std::string(to_string(r.mode.kind));
  j["pair_convention"] = std::string(mdpo::pair_convention(r.mode.kind));
  if (r.mode.kind == mdpo::ObjectiveKind::mdpo) j["gamma"] = r.mode.gamma;
  j["beta"] = beta;
  j["loss"] = r.loss;
  j["pair_count"] = r.per_pair_margin.size();
  j["active_count"] = r.active_count;
  Json margin = Json::object();
  if (!r.per_pair_margin.empty()) {
    double sum = 0.0;
    for (double m : r.per_pair_margin) sum += m;
    margin["mean"] = sum / static_cast<double>(r.per_pair_margin.size());
    margin["min"] = *std::min_element(r.per_pair_margin.begin(), r.per_pair_margin.end());
    margin["max"] = *std::max_element(r.per_pair_margin.begin(), r.per_pair_margin.end());
  }
  j["margin"] = margin;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < r.per_pair_margin.size(); ++i) {
    pairs.push_back({{"margin", r.per_pair_margin[i]},
                     {"active", static_cast<bool>(r.active[i])},
                     {"grad_logp_theta_w", r.gradients[i].logp_theta_w},
                     {"grad_logp_theta_l", r.gradients[i].logp_theta_l}});
  }
  j["pairs"] = pairs;
  return j;
}

// epoch,mode,mean_margin
inline std::string margin_curve_to_csv(const toylab::MarginCurve& curve) {
  std::string out = "epoch,mode,mean_margin\n";
  for (const auto& mc : curve.modes) {
    for (std::size_t e = 0; e < mc.mean_margin.size(); ++e) {
      out += std::to_string(e) + "," + std::string(to_string(mc.mode.kind)) + "," +
             format_real(mc.mean_margin[e]) + "\n";
    }
  }
  return out;
}

}  // namespace dvckit::io
