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
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dvckit/error.hpp"
#include "dvckit/text/tokenize.hpp"

namespace dvckit::text {

// n-grams are stored as their tokens joined by a single space.
using NgramCounts = std::map<std::string, std::size_t>;

inline NgramCounts count_ngrams(const TokenList& tokens, std::size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      gram += ' ';
      gram += tokens[i + k];
    }
    ++counts[gram];
  }
  return counts;
}

// Document frequencies over a reference corpus, one document per sentence.
class DocFreqTable {
 public:
  DocFreqTable(const std::vector<TokenList>& corpus, std::size_t max_n = 4)
      : corpus_size_(corpus.size()), max_n_(max_n) {
    if (corpus.empty())
      throw ValidationError("document frequencies need a non-empty corpus");
    if (max_n == 0) throw ValidationError("max_n must be >= 1");
    for (const auto& sentence : corpus)
      for (std::size_t n = 1; n <= max_n_; ++n)
        for (const auto& [gram, _] : count_ngrams(sentence, n)) ++df_[gram];
  }

  // 0 for n-grams never seen in the corpus.
  std::size_t frequency(const std::string& gram) const {
    auto it = df_.find(gram);
    return it == df_.end() ? 0 : it->second;
  }

  bool contains(const std::string& gram) const { return df_.contains(gram); }
  std::size_t corpus_size() const { return corpus_size_; }
  std::size_t max_n() const { return max_n_; }
  std::size_t size() const { return df_.size(); }

  // tf-idf weight factor log(N / DF); unseen n-grams are treated as DF = N.
  double idf(const std::string& gram) const {
    const std::size_t df = frequency(gram);
    if (df == 0) return 0.0;
    return std::log(static_cast<double>(corpus_size_) / static_cast<double>(df));
  }

 private:
  std::size_t corpus_size_;
  std::size_t max_n_;
  std::unordered_map<std::string, std::size_t> df_;
};

inline DocFreqTable build_document_frequencies(const std::vector<TokenList>& corpus,
                                               std::size_t max_n = 4) {
  return DocFreqTable(corpus, max_n);
}

// Base CIDEr against a single reference: mean over n = 1..max_n of the
// cosine between tf-idf n-gram vectors. Zero-norm vectors give cosine 0.
inline double cider_score(const TokenList& candidate, const TokenList& reference,
                          const DocFreqTable& df) {
  double total = 0.0;
  for (std::size_t n = 1; n <= df.max_n(); ++n) {
    const auto cand = count_ngrams(candidate, n);
    const auto ref = count_ngrams(reference, n);
    double dot = 0.0, cand_norm = 0.0, ref_norm = 0.0;
    for (const auto& [gram, tf] : cand) {
      const double w = static_cast<double>(tf) * df.idf(gram);
      cand_norm += w * w;
      if (auto it = ref.find(gram); it != ref.end())
        dot += w * static_cast<double>(it->second) * df.idf(gram);
    }
    for (const auto& [gram, tf] : ref) {
      const double w = static_cast<double>(tf) * df.idf(gram);
      ref_norm += w * w;
    }
    if (cand_norm > 0.0 && ref_norm > 0.0)
      total += dot / (std::sqrt(cand_norm) * std::sqrt(ref_norm));
  }
  return total / static_cast<double>(df.max_n());
}

}  // namespace dvckit::text
