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
#include <span>
#include <utility>
#include <vector>

#include "dvckit/eval/iou.hpp"
#include "dvckit/text/similarity.hpp"

namespace dvckit::eval {

// Dense row-major matrix of non-negative pair values.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    for (const auto& row : init) {
      if (row.size() != cols_) throw ValidationError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Alignment = std::vector<std::pair<std::size_t, std::size_t>>;  // (gt, pred)

struct AlignmentResult {
  double total = 0.0;
  Alignment alignment;
};

// Maximum-weight order-preserving partial assignment of rows to columns:
//   dp[i][j] = max(dp[i-1][j], dp[i][j-1], dp[i-1][j-1] + phi[i][j]).
// Backtracking prefers the diagonal move (only for phi > 0, so zero-valued
// pairs never appear), then the row-skip move.
inline AlignmentResult soda_alignment(const Matrix& phi) {
  AlignmentResult out;
  if (phi.empty()) return out;
  const std::size_t n = phi.rows(), m = phi.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!(phi(i, j) >= 0.0))
        throw ValidationError("alignment weights must be non-negative");

  Matrix dp(n + 1, m + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      dp(i, j) = std::max({dp(i - 1, j), dp(i, j - 1),
                           dp(i - 1, j - 1) + phi(i - 1, j - 1)});
  out.total = dp(n, m);

  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    const double here = dp(i, j);
    const double w = phi(i - 1, j - 1);
    if (w > 0.0 && here == dp(i - 1, j - 1) + w) {
      out.alignment.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (here == dp(i - 1, j)) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.alignment.begin(), out.alignment.end());
  return out;
}

struct SodaResult {
  double precision = 0.0;  // 0-100
  double recall = 0.0;     // 0-100
  double f1 = 0.0;         // 0-100
  Alignment alignment;
};

inline double harmonic_mean(double p, double r) {
  if (p <= 0.0 || r <= 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

// SODA_c for one video: align on phi = IoU x similarity, then score the
// similarity of aligned pairs against |pred| (precision) and |gt| (recall).
template <text::CaptionSimilarity Sim>
SodaResult soda_c(std::span<const TokenizedEvent> gt,
                  std::span<const TokenizedEvent> pred, const Sim& sim) {
  SodaResult out;
  if (gt.empty() || pred.empty()) return out;

  Matrix phi(gt.size(), pred.size());
  Matrix similarity(gt.size(), pred.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      const double iou = interval_iou(gt[i].interval, pred[j].interval);
      if (iou <= 0.0) continue;
      similarity(i, j) = sim(gt[i].tokens, pred[j].tokens);
      phi(i, j) = iou * similarity(i, j);
    }
  }
  auto aligned = soda_alignment(phi);
  double matched = 0.0;
  for (auto [i, j] : aligned.alignment) matched += similarity(i, j);

  out.precision = 100.0 * matched / static_cast<double>(pred.size());
  out.recall = 100.0 * matched / static_cast<double>(gt.size());
  out.f1 = harmonic_mean(out.precision, out.recall);
  out.alignment = std::move(aligned.alignment);
  return out;
}

template <text::CaptionSimilarity Sim>
SodaResult soda_c(const VideoAnnotation& gt, std::span<const Event> pred,
                  const Sim& sim) {
  const auto g = tokenize_events(gt.events);
  const auto p = tokenize_events(pred);
  return soda_c(std::span<const TokenizedEvent>(g),
                std::span<const TokenizedEvent>(p), sim);
}

}  // namespace dvckit::eval
