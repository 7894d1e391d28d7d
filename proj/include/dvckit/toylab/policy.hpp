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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dvckit/error.hpp"
#include "dvckit/rng.hpp"

namespace dvckit::toylab {

using TokenSeq = std::vector<int>;

// Tabular sequence policy: an independent categorical distribution over the
// vocabulary at every position, parameterized by logits.
class ToyPolicy {
 public:
  ToyPolicy(std::size_t vocab_size, std::size_t max_len, std::uint64_t seed,
            double init_scale = 0.1)
      : vocab_(vocab_size), max_len_(max_len), seed_(seed),
        logits_(vocab_size * max_len, 0.0) {
    if (vocab_size == 0 || max_len == 0)
      throw ValidationError("toy policy needs vocab_size and max_len >= 1");
    Rng rng(seed);
    for (double& w : logits_) w = rng.uniform(-init_scale, init_scale);
  }

  static ToyPolicy uniform(std::size_t vocab_size, std::size_t max_len) {
    return ToyPolicy(vocab_size, max_len, 0, 0.0);
  }

  std::size_t vocab_size() const { return vocab_; }
  std::size_t max_len() const { return max_len_; }
  std::uint64_t seed() const { return seed_; }

  std::span<double> logits(std::size_t pos) { return {&logits_[pos * vocab_], vocab_}; }
  std::span<const double> logits(std::size_t pos) const {
    return {&logits_[pos * vocab_], vocab_};
  }
  std::span<double> parameters() { return logits_; }
  std::span<const double> parameters() const { return logits_; }

  // log softmax(logits[pos])[token]
  double log_prob(std::size_t pos, int token) const {
    const auto row = logits(pos);
    return row[static_cast<std::size_t>(token)] - log_sum_exp(row);
  }

  void softmax(std::size_t pos, std::span<double> out) const {
    const auto row = logits(pos);
    const double lse = log_sum_exp(row);
    for (std::size_t v = 0; v < vocab_; ++v) out[v] = std::exp(row[v] - lse);
  }

  void check(const TokenSeq& seq) const {
    if (seq.size() > max_len_)
      throw ValidationError("sequence longer than the policy's max_len");
    for (int t : seq)
      if (t < 0 || static_cast<std::size_t>(t) >= vocab_)
        throw ValidationError("token " + std::to_string(t) + " outside the vocabulary");
  }

 private:
  static double log_sum_exp(std::span<const double> row) {
    const double hi = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double x : row) sum += std::exp(x - hi);
    return hi + std::log(sum);
  }

  std::size_t vocab_;
  std::size_t max_len_;
  std::uint64_t seed_;
  std::vector<double> logits_;
};

// Sum over positions of log softmax(logits[pos])[token].
inline double toy_loglik(const ToyPolicy& policy, const TokenSeq& seq) {
  policy.check(seq);
  double total = 0.0;
  for (std::size_t p = 0; p < seq.size(); ++p) total += policy.log_prob(p, seq[p]);
  return total;
}

// grad += scale * d toy_loglik / d logits, i.e. scale * (onehot - softmax)
// at every position of the sequence.
inline void accumulate_loglik_gradient(const ToyPolicy& policy, const TokenSeq& seq,
                                       double scale, std::span<double> grad) {
  policy.check(seq);
  const std::size_t v = policy.vocab_size();
  std::vector<double> probs(v);
  for (std::size_t p = 0; p < seq.size(); ++p) {
    policy.softmax(p, probs);
    double* row = &grad[p * v];
    for (std::size_t k = 0; k < v; ++k) row[k] -= scale * probs[k];
    row[static_cast<std::size_t>(seq[p])] += scale;
  }
}

}  // namespace dvckit::toylab
