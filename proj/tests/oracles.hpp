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

// Independent reference implementations used as test oracles. They share no
// code with the library beyond its plain data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

// Best total over every order-preserving partial assignment of rows to
// columns, by exhaustive recursion.
inline double best_order_preserving(const std::vector<std::vector<double>>& phi) {
  const std::size_t rows = phi.size();
  const std::size_t cols = rows == 0 ? 0 : phi[0].size();
  std::function<double(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                           std::size_t first_col) {
    if (i == rows) return 0.0;
    double best = go(i + 1, first_col);  // row i unassigned
    for (std::size_t j = first_col; j < cols; ++j)
      best = std::max(best, phi[i][j] + go(i + 1, j + 1));
    return best;
  };
  return go(0, 0);
}

// Number of order-preserving partial assignments, empty one included.
inline std::size_t count_order_preserving(std::size_t rows, std::size_t cols) {
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                                std::size_t first_col) {
    if (i == rows) return std::size_t{1};
    std::size_t n = go(i + 1, first_col);
    for (std::size_t j = first_col; j < cols; ++j) n += go(i + 1, j + 1);
    return n;
  };
  return go(0, 0);
}

struct MatchOptimum {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

// Enumerates every one-to-one matching of equal tokens, keeps those of
// maximum size and returns the fewest chunks among them. A chunk is a
// maximal run of matches adjacent in both the candidate and the reference.
inline MatchOptimum brute_force_alignment(const std::vector<std::string>& cand,
                                          const std::vector<std::string>& ref) {
  MatchOptimum best;
  bool any = false;
  std::vector<int> to_ref(cand.size(), -1);
  std::vector<bool> used(ref.size(), false);

  auto chunks_of = [&] {
    std::size_t chunks = 0;
    int prev_ref = -2;
    bool prev_matched = false;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (to_ref[i] < 0) {
        prev_matched = false;
        continue;
      }
      if (!(prev_matched && to_ref[i] == prev_ref + 1)) ++chunks;
      prev_ref = to_ref[i];
      prev_matched = true;
    }
    return chunks;
  };

  // Equal-token matching size is bounded by the per-token count minimum;
  // branches that cannot reach it are cut.
  std::size_t max_card = 0;
  {
    std::vector<std::string> seen;
    for (const auto& t : cand) {
      if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
      seen.push_back(t);
      max_card += static_cast<std::size_t>(std::min(std::count(cand.begin(), cand.end(), t),
                                                    std::count(ref.begin(), ref.end(), t)));
    }
  }

  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t m) {
    if (m + (cand.size() - i) < max_card) return;
    if (i == cand.size()) {
      const std::size_t ch = chunks_of();
      if (!any || m > best.matches || (m == best.matches && ch < best.chunks)) {
        best = {m, ch};
        any = true;
      }
      return;
    }
    go(i + 1, m);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (used[j] || ref[j] != cand[i]) continue;
      used[j] = true;
      to_ref[i] = static_cast<int>(j);
      go(i + 1, m + 1);
      to_ref[i] = -1;
      used[j] = false;
    }
  };
  go(0, 0);
  return best;
}

// METEOR from match and chunk counts, written out from the closed form.
inline double meteor_closed_form(double m, double chunks, double cand_len, double ref_len,
                                 double alpha = 0.9, double beta = 3.0, double gamma = 0.5) {
  if (m == 0.0) return 0.0;
  const double p = m / cand_len;
  const double r = m / ref_len;
  const double f = p * r / (alpha * p + (1.0 - alpha) * r);
  return f * (1.0 - gamma * std::pow(chunks / m, beta));
}

// Every token list of length 1..max_len over the given alphabet.
inline std::vector<std::vector<std::string>> all_token_lists(
    const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::vector<std::string>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : frontier) {
      for (const auto& a : alphabet) {
        auto grown = prefix;
        grown.push_back(a);
        next.push_back(grown);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                  double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline bool close_relative(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor});
}

}  // namespace oracle
