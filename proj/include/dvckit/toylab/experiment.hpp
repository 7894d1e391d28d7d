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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/cotasks/render.hpp"
#include "dvckit/mdpo/objective.hpp"
#include "dvckit/mdpo/pairs.hpp"
#include "dvckit/rng.hpp"
#include "dvckit/synth.hpp"
#include "dvckit/text/tokenize.hpp"
#include "dvckit/toylab/policy.hpp"

namespace dvckit::toylab {

struct ToyPair {
  TokenSeq preferred;
  TokenSeq dispreferred;
  double m_w = 0.0;
  double m_l = 0.0;
  int k = 2;
  bool final_task = false;

  double gap() const { return m_w - m_l; }
};

struct ToySetConfig {
  std::size_t videos = 20;
  std::size_t samples_per_task = 3;
  std::size_t vocab_size = 64;
  std::size_t max_len = 24;
  std::uint64_t seed = 0;
};

// Word ids by FNV-1a hash, truncated to max_len.
inline TokenSeq encode_words(std::string_view text, std::size_t vocab_size,
                             std::size_t max_len) {
  TokenSeq out;
  for (const auto& word : text::tokenize(text)) {
    if (out.size() == max_len) break;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : word) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    out.push_back(static_cast<int>(h % vocab_size));
  }
  return out;
}

namespace detail {

inline std::vector<TokenSpan> corrupt_spans(std::vector<TokenSpan> spans, double level,
                                            Rng& rng, int max_token) {
  for (auto& s : spans) {
    const auto shift = static_cast<int>(std::lround(level * rng.uniform(-25.0, 25.0)));
    const auto stretch = static_cast<int>(std::lround(level * rng.uniform(-10.0, 10.0)));
    int a = std::clamp(s.start + shift, 0, max_token);
    int b = std::clamp(s.end + shift + stretch, 0, max_token);
    if (a > b) std::swap(a, b);
    s = {a, b};
  }
  if (spans.size() > 1 && rng.bernoulli(level * 0.5)) spans.pop_back();
  return spans;
}

inline std::vector<std::string> corrupt_captions(std::vector<std::string> captions,
                                                 double level, Rng& rng) {
  if (captions.size() > 1 && rng.bernoulli(level * 0.5))
    rng.shuffle(std::span<std::string>(captions));
  for (auto& caption : captions) {
    if (!rng.bernoulli(level)) continue;
    // Replace the tail of the caption with a freshly drawn one.
    auto fresh = synth::random_caption(rng);
    const auto keep = static_cast<std::size_t>((1.0 - level) * static_cast<double>(caption.size()));
    auto cut = caption.rfind(' ', keep);
    caption = (cut == std::string::npos ? std::string() : caption.substr(0, cut) + " ") +
              fresh.substr(fresh.find(' ') + 1);
    caption = normalize_caption(caption);
  }
  return captions;
}

inline std::string sampled_response(const VideoAnnotation& ann, PathKind path, int k,
                                    double level, Rng& rng) {
  auto ev = cotasks::rendered_events(ann);
  const TaskKind task = mdpo::task_for_step(path, k);
  if (task == TaskKind::timestamps)
    return cotasks::render_span_list(corrupt_spans(ev.spans, level, rng, 99));
  auto captions = corrupt_captions(ev.captions, level, rng);
  if (path == PathKind::t_then_c) {
    captions.resize(ev.spans.size(), "");
    return cotasks::render_interleaved(ev.spans, captions);
  }
  return cotasks::render_caption_list(captions);
}

}  // namespace detail

// Sampled sub-task responses over a synthetic corpus: for every video, path
// and k in {2, 3}, n_s responses at random corruption levels (about a
// quarter are clean echoes of the ground truth).
inline std::vector<mdpo::SampledTaskResponses> synthesize_samples(
    std::span<const VideoAnnotation> corpus, std::size_t samples_per_task,
    std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed5eedULL);
  std::vector<mdpo::SampledTaskResponses> out;
  for (const auto& ann : corpus) {
    for (PathKind path : {PathKind::t_then_c, PathKind::c_then_t}) {
      const auto conv = cotasks::render_cotasks_sample(ann, path);
      for (int k = 2; k <= 3; ++k) {
        mdpo::SampledTaskResponses s;
        s.video_id = ann.video_id;
        s.path = path;
        s.k = k;
        const auto prefix = static_cast<std::size_t>(2 * (k - 1));
        s.history.assign(conv.turns.begin(), conv.turns.begin() + static_cast<long>(prefix));
        s.prompt = conv.turns[prefix].text;
        s.gt_response = conv.turns[prefix + 1].text;
        for (std::size_t i = 0; i < samples_per_task; ++i) {
          const double level = rng.bernoulli(0.25) ? 0.0 : rng.uniform(0.05, 1.0);
          s.responses.push_back(detail::sampled_response(ann, path, k, level, rng));
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

// Runs the synthetic corpus through response scoring and pair formation
// (gamma = 0, so every strictly ordered pair survives) and encodes the
// responses for the toy policy.
inline std::vector<ToyPair> synthesize_toy_pairs(const ToySetConfig& config = {}) {
  const auto corpus = synth::make_corpus(config.videos, config.seed);
  const auto samples = synthesize_samples(corpus, config.samples_per_task, config.seed);
  const auto pairs = mdpo::build_preference_pairs(
      std::span<const mdpo::SampledTaskResponses>(samples), 0.0, mdpo::ResponseSimilarity{});
  std::vector<ToyPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.push_back({encode_words(p.preferred.text, config.vocab_size, config.max_len),
                   encode_words(p.dispreferred.text, config.vocab_size, config.max_len),
                   p.m_w(), p.m_l(), p.k, p.k == 3});
  }
  return out;
}

// Gap threshold that lets roughly half of the pairs through.
inline double median_gap(std::span<const ToyPair> pairs) {
  if (pairs.empty()) return 0.0;
  std::vector<double> gaps;
  for (const auto& p : pairs) gaps.push_back(p.gap());
  std::sort(gaps.begin(), gaps.end());
  return gaps[(gaps.size() - 1) / 2];
}

struct MarginExperimentConfig {
  double beta = mdpo::kDefaultBeta;
  int epochs = 200;
  double lr = 0.1;
  std::uint64_t seed = 0;
  std::size_t vocab_size = 64;
  std::size_t max_len = 24;

  void validate() const {
    if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
    if (epochs < 1) throw ValidationError("epochs must be >= 1");
    if (!(lr > 0.0)) throw ValidationError("learning rate must be > 0");
  }
};

struct ModeCurve {
  mdpo::ObjectiveMode mode;
  std::vector<double> mean_margin;  // index e: after e completed epochs
  std::vector<double> loss;         // training loss at the start of epoch e
  std::size_t training_pairs = 0;
};

struct MarginCurve {
  std::vector<ModeCurve> modes;
  int epochs = 0;
};

// dpo trains on final-task pairs only; mdpo_minus and mdpo train on every
// pair (mdpo additionally gap-gated). Every mode starts from the same
// seeded policy, which is also the frozen reference, and the recorded
// margin is the mean over all pairs. Plain full-batch gradient descent.
inline MarginCurve run_margin_experiment(std::span<const ToyPair> pairs,
                                         std::span<const mdpo::ObjectiveMode> modes,
                                         const MarginExperimentConfig& config) {
  config.validate();
  if (pairs.empty()) throw ValidationError("margin experiment needs at least one pair");

  const ToyPolicy reference(config.vocab_size, config.max_len, config.seed);
  std::vector<double> ref_w, ref_l;
  for (const auto& p : pairs) {
    ref_w.push_back(toy_loglik(reference, p.preferred));
    ref_l.push_back(toy_loglik(reference, p.dispreferred));
  }

  MarginCurve curve;
  curve.epochs = config.epochs;
  for (const auto& mode : modes) {
    ModeCurve mc;
    mc.mode = mode;
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mode.kind != mdpo::ObjectiveKind::dpo || pairs[i].final_task) train.push_back(i);
    mc.training_pairs = train.size();

    ToyPolicy policy = reference;
    std::vector<double> grad(policy.parameters().size());
    for (int epoch = 0; epoch <= config.epochs; ++epoch) {
      std::vector<double> logp_w(pairs.size()), logp_l(pairs.size());
      double margin_sum = 0.0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        logp_w[i] = toy_loglik(policy, pairs[i].preferred);
        logp_l[i] = toy_loglik(policy, pairs[i].dispreferred);
        margin_sum += config.beta * ((logp_w[i] - ref_w[i]) - (logp_l[i] - ref_l[i]));
      }
      mc.mean_margin.push_back(margin_sum / static_cast<double>(pairs.size()));

      std::vector<mdpo::PairLikelihoods> batch;
      batch.reserve(train.size());
      for (std::size_t i : train)
        batch.push_back({logp_w[i], logp_l[i], ref_w[i], ref_l[i], pairs[i].m_w, pairs[i].m_l});
      const auto result = mdpo::batch_loss(batch, mode, config.beta);
      mc.loss.push_back(result.loss);
      if (epoch == config.epochs) break;

      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t b = 0; b < train.size(); ++b) {
        if (!result.active[b]) continue;
        const auto& p = pairs[train[b]];
        accumulate_loglik_gradient(policy, p.preferred, result.gradients[b].logp_theta_w, grad);
        accumulate_loglik_gradient(policy, p.dispreferred, result.gradients[b].logp_theta_l, grad);
      }
      auto params = policy.parameters();
      for (std::size_t j = 0; j < params.size(); ++j) params[j] -= config.lr * grad[j];
    }
    curve.modes.push_back(std::move(mc));
  }
  return curve;
}

}  // namespace dvckit::toylab
