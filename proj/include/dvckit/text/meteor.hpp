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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dvckit/error.hpp"
#include "dvckit/text/stemmer.hpp"
#include "dvckit/text/tokenize.hpp"

namespace dvckit::text {

struct MeteorParams {
  double alpha = 0.9;       // precision/recall blend
  double beta_frag = 3.0;   // fragmentation exponent
  double gamma_frag = 0.5;  // fragmentation weight
  bool use_stemming = false;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ValidationError("meteor alpha must lie in (0, 1)");
    if (!(beta_frag > 0.0))
      throw ValidationError("meteor fragmentation exponent must be > 0");
    if (!(gamma_frag >= 0.0 && gamma_frag <= 1.0))
      throw ValidationError("meteor fragmentation weight must lie in [0, 1]");
  }
};

// One-to-one unigram alignment between candidate and reference positions.
struct MeteorAlignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (cand, ref)
  std::size_t chunks = 0;
  bool exact_search = true;  // false when the search budget forced greedy

  std::size_t matches() const { return pairs.size(); }
};

// Chunks of an alignment: maximal runs adjacent in both sequences.
inline std::size_t count_chunks(
    std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  if (pairs.empty()) return 0;
  std::sort(pairs.begin(), pairs.end());
  std::size_t chunks = 1;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const bool adjacent = pairs[i].first == pairs[i - 1].first + 1 &&
                          pairs[i].second == pairs[i - 1].second + 1;
    if (!adjacent) ++chunks;
  }
  return chunks;
}

namespace detail {

// Extends a fixed partial alignment by matching free candidate and reference
// positions that share a class id. The extension has maximum size, and among
// maximum extensions it maximizes adjacency links of the whole alignment
// (chunks = matches - links). Exact memoized search over
// (candidate position, previous reference position, used reference set);
// falls back to a greedy pass when the reference is longer than 64 tokens
// or the state budget runs out.
class ChunkMinimizer {
 public:
  static constexpr std::size_t kStateBudget = 1u << 18;

  ChunkMinimizer(const std::vector<int>& cand_class,
                 const std::vector<int>& ref_class,
                 const std::vector<long>& fixed_ref_of_cand)
      : cand_class_(cand_class),
        ref_class_(ref_class),
        fixed_(fixed_ref_of_cand) {
    fixed_ref_used_.assign(ref_class_.size(), false);
    for (long j : fixed_)
      if (j >= 0) fixed_ref_used_[static_cast<std::size_t>(j)] = true;
    // Suffix class counts of free candidate positions, for the feasibility
    // bound.
    int max_class = -1;
    for (int c : cand_class_) max_class = std::max(max_class, c);
    for (int c : ref_class_) max_class = std::max(max_class, c);
    classes_ = static_cast<std::size_t>(max_class + 1);
    suffix_.assign((cand_class_.size() + 1) * classes_, 0);
    for (std::size_t i = cand_class_.size(); i-- > 0;) {
      for (std::size_t c = 0; c < classes_; ++c)
        suffix_[i * classes_ + c] = suffix_[(i + 1) * classes_ + c];
      if (fixed_[i] < 0 && cand_class_[i] >= 0)
        ++suffix_[i * classes_ + static_cast<std::size_t>(cand_class_[i])];
    }
    free_ref_count_.assign(classes_, 0);
    for (std::size_t j = 0; j < ref_class_.size(); ++j)
      if (!fixed_ref_used_[j] && ref_class_[j] >= 0)
        ++free_ref_count_[static_cast<std::size_t>(ref_class_[j])];
    target_ = 0;
    for (std::size_t c = 0; c < classes_; ++c)
      target_ += std::min(suffix_[c], free_ref_count_[c]);
  }

  // Returns ref position per candidate position (-1 = unmatched), covering
  // both the fixed and the newly added matches.
  std::vector<long> solve(bool& exact) {
    exact = ref_class_.size() <= 64;
    if (exact) {
      const int best = search(0, -1, 0);
      if (best != kInfeasible && !budget_exceeded_) return reconstruct();
      exact = false;
    }
    return greedy();
  }

  std::size_t added_matches() const { return target_; }

 private:
  static constexpr int kInfeasible = std::numeric_limits<int>::min() / 2;

  struct Key {
    std::size_t i;
    long prev;
    std::uint64_t used;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.used * 0x9E3779B97F4A7C15ULL;
      h ^= (static_cast<std::uint64_t>(k.i) << 32) ^
           static_cast<std::uint64_t>(k.prev + 1);
      h *= 0xBF58476D1CE4E5B9ULL;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };

  int popcount(std::uint64_t x) const { return std::popcount(x); }

  // Matches still achievable from candidate position i given `used`.
  std::size_t upper_bound(std::size_t i, std::uint64_t used) const {
    std::vector<std::size_t> ref_left = free_ref_count_;
    for (std::size_t j = 0; j < ref_class_.size(); ++j)
      if ((used >> j) & 1U) --ref_left[static_cast<std::size_t>(ref_class_[j])];
    std::size_t total = 0;
    for (std::size_t c = 0; c < classes_; ++c)
      total += std::min(suffix_[i * classes_ + c], ref_left[c]);
    return total;
  }

  int search(std::size_t i, long prev, std::uint64_t used) {
    const std::size_t n = cand_class_.size();
    if (static_cast<std::size_t>(popcount(used)) + upper_bound(i, used) <
        target_)
      return kInfeasible;
    if (i == n) return 0;

    const Key key{i, prev, used};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= kStateBudget) {
      budget_exceeded_ = true;
      return kInfeasible;
    }

    int best = kInfeasible;
    if (fixed_[i] >= 0) {
      const long j = fixed_[i];
      const int sub = search(i + 1, j, used);
      if (sub != kInfeasible) best = sub + (prev >= 0 && j == prev + 1 ? 1 : 0);
    } else {
      if (cand_class_[i] >= 0) {
        for (std::size_t j = 0; j < ref_class_.size(); ++j) {
          if (fixed_ref_used_[j] || ((used >> j) & 1U) ||
              ref_class_[j] != cand_class_[i])
            continue;
          const int sub =
              search(i + 1, static_cast<long>(j), used | (std::uint64_t{1} << j));
          if (sub == kInfeasible) continue;
          const int value =
              sub + (prev >= 0 && static_cast<long>(j) == prev + 1 ? 1 : 0);
          best = std::max(best, value);
        }
      }
      const int skip = search(i + 1, -1, used);
      best = std::max(best, skip);
    }
    memo_.emplace(key, best);
    return best;
  }

  std::vector<long> reconstruct() {
    std::vector<long> out(cand_class_.size(), -1);
    long prev = -1;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < cand_class_.size(); ++i) {
      const int here = search(i, prev, used);
      if (fixed_[i] >= 0) {
        out[i] = fixed_[i];
        prev = fixed_[i];
        continue;
      }
      bool taken = false;
      if (cand_class_[i] >= 0) {
        for (std::size_t j = 0; j < ref_class_.size() && !taken; ++j) {
          if (fixed_ref_used_[j] || ((used >> j) & 1U) ||
              ref_class_[j] != cand_class_[i])
            continue;
          const std::uint64_t next = used | (std::uint64_t{1} << j);
          const int sub = search(i + 1, static_cast<long>(j), next);
          if (sub == kInfeasible) continue;
          const int value =
              sub + (prev >= 0 && static_cast<long>(j) == prev + 1 ? 1 : 0);
          if (value == here) {
            out[i] = static_cast<long>(j);
            prev = static_cast<long>(j);
            used = next;
            taken = true;
          }
        }
      }
      if (!taken) prev = -1;
    }
    return out;
  }

  // Matches every candidate whose class still has a free reference token,
  // which reaches maximum cardinality; prefers continuing the previous chunk,
  // then the leftmost free position.
  std::vector<long> greedy() const {
    const std::size_t n = cand_class_.size();
    std::vector<long> out(n, -1);
    std::vector<bool> used = fixed_ref_used_;
    std::vector<std::size_t> ref_left = free_ref_count_;
    long prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (fixed_[i] >= 0) {
        out[i] = fixed_[i];
        prev = fixed_[i];
        continue;
      }
      const int c = cand_class_[i];
      long pick = -1;
      if (c >= 0 && ref_left[static_cast<std::size_t>(c)] > 0) {
        const auto cc = static_cast<std::size_t>(c);
        if (prev >= 0 && static_cast<std::size_t>(prev + 1) < ref_class_.size() &&
            !used[static_cast<std::size_t>(prev + 1)] &&
            ref_class_[static_cast<std::size_t>(prev + 1)] == c)
          pick = prev + 1;
        for (std::size_t j = 0; pick < 0 && j < ref_class_.size(); ++j)
          if (!used[j] && ref_class_[j] == c) pick = static_cast<long>(j);
        if (pick >= 0) {
          used[static_cast<std::size_t>(pick)] = true;
          --ref_left[cc];
        }
      }
      out[i] = pick;
      prev = pick;
    }
    return out;
  }

  const std::vector<int>& cand_class_;
  const std::vector<int>& ref_class_;
  const std::vector<long>& fixed_;
  std::vector<bool> fixed_ref_used_;
  std::size_t classes_ = 0;
  std::vector<std::size_t> suffix_;
  std::vector<std::size_t> free_ref_count_;
  std::size_t target_ = 0;
  std::unordered_map<Key, int, KeyHash> memo_;
  bool budget_exceeded_ = false;
};

// Maps strings to dense class ids shared by both sides.
inline std::pair<std::vector<int>, std::vector<int>> classify(
    const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  std::map<std::string, int> ids;
  std::vector<int> ref_class;
  for (const auto& w : ref) {
    auto [it, _] = ids.emplace(w, static_cast<int>(ids.size()));
    ref_class.push_back(it->second);
  }
  std::vector<int> cand_class;
  for (const auto& w : cand) {
    auto it = ids.find(w);
    cand_class.push_back(it == ids.end() ? -1 : it->second);
  }
  return {cand_class, ref_class};
}

}  // namespace detail

// Two-stage unigram alignment: exact surface matches first, then (when
// enabled) Porter-stem matches among the still-unaligned tokens. Each stage
// maximizes its match count and minimizes chunks of the combined alignment.
inline MeteorAlignment meteor_align(const TokenList& candidate,
                                    const TokenList& reference,
                                    bool use_stemming) {
  MeteorAlignment result;
  std::vector<long> assignment(candidate.size(), -1);

  auto run_stage = [&](const std::vector<std::string>& cand_keys,
                       const std::vector<std::string>& ref_keys) {
    auto [cand_class, ref_class] = detail::classify(cand_keys, ref_keys);
    // Reference positions already aligned take no part in this stage.
    std::vector<bool> ref_taken(reference.size(), false);
    for (long j : assignment)
      if (j >= 0) ref_taken[static_cast<std::size_t>(j)] = true;
    for (std::size_t j = 0; j < ref_class.size(); ++j)
      if (ref_taken[j]) ref_class[j] = -1;
    detail::ChunkMinimizer solver(cand_class, ref_class, assignment);
    bool exact = true;
    assignment = solver.solve(exact);
    result.exact_search = result.exact_search && exact;
  };

  run_stage(candidate, reference);
  if (use_stemming) {
    std::vector<std::string> cand_stems, ref_stems;
    for (const auto& w : candidate) cand_stems.push_back(porter_stem(w));
    for (const auto& w : reference) ref_stems.push_back(porter_stem(w));
    run_stage(cand_stems, ref_stems);
  }

  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] >= 0)
      result.pairs.emplace_back(i, static_cast<std::size_t>(assignment[i]));
  result.chunks = count_chunks(result.pairs);
  return result;
}

inline double meteor_from_counts(std::size_t matches, std::size_t chunks,
                                 std::size_t cand_len, std::size_t ref_len,
                                 const MeteorParams& params) {
  if (matches == 0 || cand_len == 0 || ref_len == 0) return 0.0;
  const double m = static_cast<double>(matches);
  const double precision = m / static_cast<double>(cand_len);
  const double recall = m / static_cast<double>(ref_len);
  const double f_mean = precision * recall /
                        (params.alpha * precision + (1.0 - params.alpha) * recall);
  const double penalty =
      params.gamma_frag * std::pow(static_cast<double>(chunks) / m, params.beta_frag);
  return f_mean * (1.0 - penalty);
}

// METEOR without synonym or paraphrase stages.
inline double meteor_score(const TokenList& candidate, const TokenList& reference,
                           const MeteorParams& params = {}) {
  params.validate();
  if (candidate.empty() || reference.empty()) return 0.0;
  const auto alignment = meteor_align(candidate, reference, params.use_stemming);
  return meteor_from_counts(alignment.matches(), alignment.chunks,
                            candidate.size(), reference.size(), params);
}

}  // namespace dvckit::text
