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

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dvckit/error.hpp"

namespace dvckit::mdpo {

inline constexpr double kDefaultBeta = 0.5;

// Sequence log-likelihoods of a preferred (w) and dispreferred (l) response
// under the policy and the frozen reference, plus their task metrics.
struct PairLikelihoods {
  double logp_theta_w = 0.0;
  double logp_theta_l = 0.0;
  double logp_ref_w = 0.0;
  double logp_ref_l = 0.0;
  double m_w = 0.0;
  double m_l = 0.0;

  double gap() const { return m_w - m_l; }
};

inline void validate(const PairLikelihoods& p) {
  if (!std::isfinite(p.logp_theta_w) || !std::isfinite(p.logp_theta_l) ||
      !std::isfinite(p.logp_ref_w) || !std::isfinite(p.logp_ref_l) ||
      !std::isfinite(p.m_w) || !std::isfinite(p.m_l))
    throw ValidationError("pair likelihoods and metrics must be finite");
  if (!(p.m_w > p.m_l))
    throw ValidationError("preferred metric must exceed dispreferred metric");
}

inline double likelihood_ratio(double logp_theta, double logp_ref) {
  return logp_theta - logp_ref;
}

inline double response_loglik(std::span<const double> token_logprobs) {
  double sum = 0.0;
  for (double lp : token_logprobs) sum += lp;
  return sum;
}

// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct PairLoss {
  double loss = 0.0;
  double grad_w = 0.0;  // d loss / d logp_theta_w
  double grad_l = 0.0;  // d loss / d logp_theta_l
  double margin = 0.0;  // beta * (r_w - r_l)
};

// -log sigmoid(beta * (r_w - r_l)).
inline PairLoss pair_loss(const PairLikelihoods& p, double beta = kDefaultBeta) {
  validate(p);
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  PairLoss out;
  const double r_w = likelihood_ratio(p.logp_theta_w, p.logp_ref_w);
  const double r_l = likelihood_ratio(p.logp_theta_l, p.logp_ref_l);
  out.margin = beta * (r_w - r_l);
  out.loss = softplus(-out.margin);
  const double s = sigmoid(-out.margin);
  out.grad_w = -s * beta;
  out.grad_l = s * beta;
  return out;
}

enum class ObjectiveKind { dpo, mdpo_minus, mdpo };

struct ObjectiveMode {
  ObjectiveKind kind = ObjectiveKind::mdpo;
  double gamma = 10.0;  // used by mdpo only

  static ObjectiveMode dpo() { return {ObjectiveKind::dpo, 0.0}; }
  static ObjectiveMode mdpo_minus() { return {ObjectiveKind::mdpo_minus, 0.0}; }
  static ObjectiveMode mdpo(double gamma) { return {ObjectiveKind::mdpo, gamma}; }

  bool admits(const PairLikelihoods& p) const {
    return kind != ObjectiveKind::mdpo || p.gap() > gamma;
  }
};

inline std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::dpo: return "dpo";
    case ObjectiveKind::mdpo_minus: return "mdpo_minus";
    case ObjectiveKind::mdpo: return "mdpo";
  }
  return "mdpo";
}

// Which pairs the caller is expected to supply for each mode. The math of
// dpo and mdpo_minus is identical; they differ in the dataset.
inline std::string_view pair_convention(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::dpo: return "final_task_only";
    case ObjectiveKind::mdpo_minus: return "all_subtasks";
    case ObjectiveKind::mdpo: return "all_subtasks_gap_gated";
  }
  return "all_subtasks";
}

inline ObjectiveKind objective_kind_from_string(std::string_view s) {
  if (s == "dpo") return ObjectiveKind::dpo;
  if (s == "mdpo_minus" || s == "mdpo-minus") return ObjectiveKind::mdpo_minus;
  if (s == "mdpo") return ObjectiveKind::mdpo;
  throw ValidationError("unknown objective '" + std::string(s) +
                        "' (expected dpo, mdpo_minus or mdpo)");
}

struct PairGradient {
  double logp_theta_w = 0.0;
  double logp_theta_l = 0.0;
};

struct LossBatchResult {
  double loss = 0.0;                   // mean over active pairs, 0 if none
  std::vector<double> per_pair_margin; // every pair, gated or not
  std::vector<bool> active;
  std::size_t active_count = 0;
  std::vector<PairGradient> gradients; // of `loss`; zero for gated pairs
  ObjectiveMode mode;
};

// Mean pair loss over the pairs the mode admits. Summation runs in pair
// order, so results do not depend on how callers batch the work.
inline LossBatchResult batch_loss(std::span<const PairLikelihoods> pairs,
                                  ObjectiveMode mode, double beta = kDefaultBeta) {
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  if (mode.kind == ObjectiveKind::mdpo && !(mode.gamma >= 0.0))
    throw ValidationError("gamma must be >= 0");
  LossBatchResult out;
  out.mode = mode;
  out.per_pair_margin.reserve(pairs.size());
  out.active.reserve(pairs.size());
  out.gradients.assign(pairs.size(), {});

  std::vector<PairLoss> losses;
  losses.reserve(pairs.size());
  for (const auto& p : pairs) {
    validate(p);
    losses.push_back(pair_loss(p, beta));
    out.per_pair_margin.push_back(losses.back().margin);
    const bool on = mode.admits(p);
    out.active.push_back(on);
    if (on) {
      ++out.active_count;
      out.loss += losses.back().loss;
    }
  }
  if (out.active_count == 0) return out;
  const double n = static_cast<double>(out.active_count);
  out.loss /= n;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!out.active[i]) continue;
    out.gradients[i] = {losses[i].grad_w / n, losses[i].grad_l / n};
  }
  return out;
}

}  // namespace dvckit::mdpo
