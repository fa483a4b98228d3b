//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force reference implementations. Everything here is
// written against the definitions directly, with no shared scoring code,
// so library results can be checked to tight tolerances.

#ifndef MOLFORGE_TESTS_ORACLES_HPP
#define MOLFORGE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "molforge/text.hpp"

namespace molforge::testing {

// Term-by-term BM25 recomputed from scratch over the raw corpus.
inline std::map<std::string, double> brute_force_bm25(
    const std::map<std::string, std::string>& corpus, const std::string& query,
    double k1, double b) {
  std::map<std::string, std::vector<std::string>> docs;
  for (const auto& [id, caption] : corpus) {
    docs[id] = tokenize_caption(caption);
  }
  double total_len = 0.0;
  for (const auto& [id, tokens] : docs) total_len += tokens.size();
  const double avgdl = total_len / static_cast<double>(docs.size());
  const double n_docs = static_cast<double>(docs.size());

  std::set<std::string> terms;
  for (const std::string& t : tokenize_caption(query)) terms.insert(t);

  std::map<std::string, double> scores;
  for (const auto& [id, tokens] : docs) scores[id] = 0.0;

  for (const std::string& term : terms) {
    double df = 0.0;
    for (const auto& [id, tokens] : docs) {
      if (std::find(tokens.begin(), tokens.end(), term) != tokens.end()) {
        df += 1.0;
      }
    }
    if (df == 0.0) continue;
    const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
    for (const auto& [id, tokens] : docs) {
      const double tf = static_cast<double>(
          std::count(tokens.begin(), tokens.end(), term));
      if (tf == 0.0) continue;
      const double denom =
          tf + k1 * (1.0 - b + b * tokens.size() / avgdl);
      scores[id] += idf * tf * (k1 + 1.0) / denom;
    }
  }
  return scores;
}

// Exhaustive recursive Levenshtein (no memoization, no DP); only usable
// for short strings.
inline int exhaustive_levenshtein_at(const std::string& a,
                                     const std::string& b, std::size_t i,
                                     std::size_t j) {
  if (i == a.size()) return static_cast<int>(b.size() - j);
  if (j == b.size()) return static_cast<int>(a.size() - i);
  const int del = exhaustive_levenshtein_at(a, b, i + 1, j) + 1;
  const int ins = exhaustive_levenshtein_at(a, b, i, j + 1) + 1;
  const int sub = exhaustive_levenshtein_at(a, b, i + 1, j + 1) +
                  (a[i] == b[j] ? 0 : 1);
  return std::min({del, ins, sub});
}

inline int exhaustive_levenshtein(const std::string& a, const std::string& b) {
  return exhaustive_levenshtein_at(a, b, 0, 0);
}

// Modified n-gram precision counts for corpus BLEU, recomputed naively.
struct BleuCounts {
  double matched = 0.0;
  double total = 0.0;
};

inline std::map<std::vector<std::string>, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[std::vector<std::string>(tokens.begin() + i,
                                    tokens.begin() + i + n)] += 1;
  }
  return counts;
}

inline BleuCounts bleu_precision_counts(
    const std::vector<std::vector<std::string>>& refs,
    const std::vector<std::vector<std::string>>& hyps, int n) {
  BleuCounts out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto ref_counts = ngram_counts(refs[i], n);
    const auto hyp_counts = ngram_counts(hyps[i], n);
    for (const auto& [gram, count] : hyp_counts) {
      out.total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) out.matched += std::min(count, it->second);
    }
  }
  return out;
}

inline double brute_force_bleu(
    const std::vector<std::vector<std::string>>& refs,
    const std::vector<std::vector<std::string>>& hyps, int max_n,
    double epsilon = 1e-9) {
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const BleuCounts counts = bleu_precision_counts(refs, hyps, n);
    double precision = counts.total > 0.0 ? counts.matched / counts.total : 0.0;
    if (precision == 0.0) precision = epsilon;
    log_sum += std::log(precision);
  }
  double ref_len = 0.0;
  double hyp_len = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ref_len += refs[i].size();
    hyp_len += hyps[i].size();
  }
  const double brevity =
      hyp_len > ref_len ? 1.0
                        : (hyp_len == 0.0 ? 0.0
                                          : std::exp(1.0 - ref_len / hyp_len));
  return brevity * std::exp(log_sum / max_n);
}

inline int lcs_length(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  std::vector<std::vector<int>> table(a.size() + 1,
                                      std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      table[i][j] = a[i - 1] == b[j - 1]
                        ? table[i - 1][j - 1] + 1
                        : std::max(table[i - 1][j], table[i][j - 1]);
    }
  }
  return table[a.size()][b.size()];
}

inline double brute_force_rouge_n(const std::vector<std::string>& ref,
                                  const std::vector<std::string>& hyp, int n) {
  const auto ref_counts = ngram_counts(ref, n);
  const auto hyp_counts = ngram_counts(hyp, n);
  double overlap = 0.0;
  double hyp_total = 0.0;
  double ref_total = 0.0;
  for (const auto& [gram, count] : hyp_counts) hyp_total += count;
  for (const auto& [gram, count] : ref_counts) ref_total += count;
  for (const auto& [gram, count] : hyp_counts) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) overlap += std::min(count, it->second);
  }
  if (hyp_total == 0.0 || ref_total == 0.0 || overlap == 0.0) return 0.0;
  const double precision = overlap / hyp_total;
  const double recall = overlap / ref_total;
  return 2.0 * precision * recall / (precision + recall);
}

inline double brute_force_rouge_l(const std::vector<std::string>& ref,
                                  const std::vector<std::string>& hyp) {
  if (ref.empty() || hyp.empty()) return 0.0;
  const double lcs = lcs_length(ref, hyp);
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(hyp.size());
  const double recall = lcs / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace molforge::testing

#endif  // MOLFORGE_TESTS_ORACLES_HPP
