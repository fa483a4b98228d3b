//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "molforge/smiles.hpp"
#include "molforge/text.hpp"

namespace molforge {

using nlohmann::json;

namespace {

void require_paired(std::size_t refs, std::size_t hyps) {
  if (refs != hyps) {
    throw LengthMismatch("got " + std::to_string(refs) + " references and " +
                         std::to_string(hyps) + " hypotheses");
  }
}

std::map<std::vector<std::string>, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[std::vector<std::string>(tokens.begin() + i,
                                    tokens.begin() + i + n)] += 1;
  }
  return counts;
}

}  // namespace

double bleu_tokens(const std::vector<std::vector<std::string>>& references,
                   const std::vector<std::vector<std::string>>& hypotheses,
                   int max_n, double epsilon) {
  require_paired(references.size(), hypotheses.size());
  if (references.empty()) throw EmptyCorpus("bleu needs at least one pair");

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    double matched = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < references.size(); ++i) {
      const auto ref_counts = ngram_counts(references[i], n);
      for (const auto& [gram, count] : ngram_counts(hypotheses[i], n)) {
        total += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matched += std::min(count, it->second);
      }
    }
    double precision = total > 0.0 ? matched / total : 0.0;
    if (precision == 0.0) precision = epsilon;
    log_sum += std::log(precision);
  }

  double ref_len = 0.0;
  double hyp_len = 0.0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    ref_len += references[i].size();
    hyp_len += hypotheses[i].size();
  }
  double brevity = 1.0;
  if (hyp_len == 0.0) {
    brevity = 0.0;
  } else if (hyp_len <= ref_len) {
    brevity = std::exp(1.0 - ref_len / hyp_len);
  }
  return brevity * std::exp(log_sum / max_n);
}

namespace {

std::vector<std::vector<std::string>> tokenize_all(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(tokenize_caption(text));
  return out;
}

}  // namespace

double bleu(const std::vector<std::string>& references,
            const std::vector<std::string>& hypotheses, int max_n) {
  return bleu_tokens(tokenize_all(references), tokenize_all(hypotheses),
                     max_n);
}

namespace {

double rouge_n_pair(const std::vector<std::string>& ref,
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
  if (overlap == 0.0 || hyp_total == 0.0 || ref_total == 0.0) return 0.0;
  const double precision = overlap / hyp_total;
  const double recall = overlap / ref_total;
  return 2.0 * precision * recall / (precision + recall);
}

double rouge_l_pair(const std::vector<std::string>& ref,
                    const std::vector<std::string>& hyp) {
  if (ref.empty() || hyp.empty()) return 0.0;
  std::vector<std::vector<int>> table(ref.size() + 1,
                                      std::vector<int>(hyp.size() + 1, 0));
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      table[i][j] = ref[i - 1] == hyp[j - 1]
                        ? table[i - 1][j - 1] + 1
                        : std::max(table[i - 1][j], table[i][j - 1]);
    }
  }
  const double lcs = table[ref.size()][hyp.size()];
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(hyp.size());
  const double recall = lcs / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double rouge(const std::vector<std::string>& references,
             const std::vector<std::string>& hypotheses,
             RougeVariant variant) {
  require_paired(references.size(), hypotheses.size());
  if (references.empty()) throw EmptyCorpus("rouge needs at least one pair");

  double sum = 0.0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const auto ref = tokenize_caption(references[i]);
    const auto hyp = tokenize_caption(hypotheses[i]);
    switch (variant) {
      case RougeVariant::Rouge1: sum += rouge_n_pair(ref, hyp, 1); break;
      case RougeVariant::Rouge2: sum += rouge_n_pair(ref, hyp, 2); break;
      case RougeVariant::RougeL: sum += rouge_l_pair(ref, hyp); break;
    }
  }
  return sum / static_cast<double>(references.size());
}

MeteorAlignment meteor_align(const std::vector<std::string>& reference,
                             const std::vector<std::string>& hypothesis) {
  const int ref_n = static_cast<int>(reference.size());
  const int hyp_n = static_cast<int>(hypothesis.size());
  std::vector<int> hyp_to_ref(hyp_n, -1);
  std::vector<bool> ref_used(ref_n, false);

  // Stage 1 exact, stage 2 stemmed. Within a stage, each hypothesis token
  // takes the closest unmatched reference token (ties toward the left).
  for (int stage = 0; stage < 2; ++stage) {
    for (int h = 0; h < hyp_n; ++h) {
      if (hyp_to_ref[h] != -1) continue;
      const std::string key =
          stage == 0 ? hypothesis[h] : stem(hypothesis[h]);
      int best = -1;
      for (int r = 0; r < ref_n; ++r) {
        if (ref_used[r]) continue;
        const std::string ref_key = stage == 0 ? reference[r] : stem(reference[r]);
        if (ref_key != key) continue;
        if (best == -1 || std::abs(r - h) < std::abs(best - h)) best = r;
      }
      if (best != -1) {
        hyp_to_ref[h] = best;
        ref_used[best] = true;
      }
    }
  }

  MeteorAlignment out;
  int prev_ref = -2;
  bool in_chunk = false;
  for (int h = 0; h < hyp_n; ++h) {
    if (hyp_to_ref[h] == -1) {
      in_chunk = false;
      continue;
    }
    ++out.matches;
    if (!in_chunk || hyp_to_ref[h] != prev_ref + 1) ++out.chunks;
    in_chunk = true;
    prev_ref = hyp_to_ref[h];
  }
  return out;
}

double meteor_pair(const std::vector<std::string>& reference,
                   const std::vector<std::string>& hypothesis) {
  if (reference.empty() || hypothesis.empty()) return 0.0;
  const MeteorAlignment alignment = meteor_align(reference, hypothesis);
  if (alignment.matches == 0) return 0.0;
  const double m = alignment.matches;
  const double precision = m / static_cast<double>(hypothesis.size());
  const double recall = m / static_cast<double>(reference.size());
  const double f_mean =
      10.0 * precision * recall / (recall + 9.0 * precision);
  const double fragment = static_cast<double>(alignment.chunks) / m;
  const double penalty = 0.5 * fragment * fragment * fragment;
  return f_mean * (1.0 - penalty);
}

double meteor(const std::vector<std::string>& references,
              const std::vector<std::string>& hypotheses) {
  require_paired(references.size(), hypotheses.size());
  if (references.empty()) throw EmptyCorpus("meteor needs at least one pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    sum += meteor_pair(tokenize_caption(references[i]),
                       tokenize_caption(hypotheses[i]));
  }
  return sum / static_cast<double>(references.size());
}

int levenshtein(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double exact_match(const std::vector<std::string>& references,
                   const std::vector<std::string>& hypotheses) {
  require_paired(references.size(), hypotheses.size());
  if (references.empty()) {
    throw EmptyCorpus("exact match needs at least one pair");
  }
  int matches = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    try {
      const CanonicalSmiles ref = canonicalize(parse_smiles(references[i]));
      const CanonicalSmiles hyp = canonicalize(parse_smiles(hypotheses[i]));
      matches += ref == hyp;
    } catch (const ParseError&) {
      // unparseable side: counts as a non-match
    }
  }
  return static_cast<double>(matches) /
         static_cast<double>(references.size());
}

namespace {

Fingerprint fingerprint_of(const MoleculeGraph& graph, FingerprintKind kind) {
  switch (kind) {
    case FingerprintKind::Keys: return structural_keys(graph);
    case FingerprintKind::Path: return path_fingerprint(graph, 7, 2048);
    case FingerprintKind::Morgan: return morgan_fingerprint(graph, 2, 2048);
  }
  return morgan_fingerprint(graph, 2, 2048);
}

}  // namespace

double fingerprint_fts(const std::vector<std::string>& references,
                       const std::vector<std::string>& hypotheses,
                       FingerprintKind kind) {
  require_paired(references.size(), hypotheses.size());
  if (references.empty()) throw EmptyCorpus("fts needs at least one pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    try {
      const MoleculeGraph ref = parse_smiles(references[i]);
      const MoleculeGraph hyp = parse_smiles(hypotheses[i]);
      sum += tanimoto(fingerprint_of(ref, kind), fingerprint_of(hyp, kind));
    } catch (const ParseError&) {
      // invalid molecule on either side contributes 0
    }
  }
  return sum / static_cast<double>(references.size());
}

double validity(const std::vector<std::string>& hypotheses) {
  if (hypotheses.empty()) throw EmptyCorpus("validity needs hypotheses");
  int valid = 0;
  for (const std::string& text : hypotheses) valid += is_valid_smiles(text);
  return static_cast<double>(valid) / static_cast<double>(hypotheses.size());
}

// --- probes -----------------------------------------------------------------

const char* to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::Canonical: return "canonical";
    case ProbeKind::Hydrogen: return "hydrogen";
    case ProbeKind::Kekulization: return "kekulization";
    case ProbeKind::Cycles: return "cycles";
  }
  return "canonical";
}

ProbeKind probe_from_string(const std::string& text) {
  if (text == "canonical") return ProbeKind::Canonical;
  if (text == "hydrogen") return ProbeKind::Hydrogen;
  if (text == "kekulization") return ProbeKind::Kekulization;
  if (text == "cycles") return ProbeKind::Cycles;
  throw std::invalid_argument("unknown probe kind: " + text);
}

std::vector<DatasetItem> probe_testset(const std::vector<DatasetItem>& testset,
                                       ProbeKind kind, std::uint64_t seed) {
  std::vector<DatasetItem> out;
  out.reserve(testset.size());
  std::vector<std::string> failed;
  std::string first_error;

  for (const DatasetItem& item : testset) {
    try {
      DatasetItem transformed = item;
      switch (kind) {
        case ProbeKind::Canonical:
          transformed.smiles = canonicalize(parse_smiles(item.smiles)).text;
          break;
        case ProbeKind::Hydrogen:
          transformed.smiles =
              write_smiles(add_explicit_hydrogens(parse_smiles(item.smiles)));
          break;
        case ProbeKind::Kekulization:
          transformed.smiles =
              write_smiles(kekulize(parse_smiles(item.smiles)));
          break;
        case ProbeKind::Cycles: {
          const std::uint64_t item_seed =
              fnv1a64(std::to_string(seed) + ":" + item.id);
          transformed.smiles =
              renumber_ring_closures(item.smiles, item_seed);
          break;
        }
      }
      out.push_back(std::move(transformed));
    } catch (const std::exception& e) {
      failed.push_back(item.id);
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!failed.empty()) {
    std::string ids;
    for (const std::string& id : failed) {
      if (!ids.empty()) ids += ", ";
      ids += id;
    }
    throw ProbeError("probe " + std::string(to_string(kind)) + " failed for " +
                         std::to_string(failed.size()) + " item(s) [" + ids +
                         "]: " + first_error,
                     failed);
  }
  return out;
}

// --- reports -----------------------------------------------------------------

json EvalReport::to_json() const {
  return {{"direction", to_string(direction)},
          {"metrics", metrics},
          {"sample_count", sample_count},
          {"invalid_count", invalid_count}};
}

namespace {

const std::vector<std::pair<const char*, const char*>> kMol2CapColumns = {
    {"bleu2", "BLEU-2"},   {"bleu4", "BLEU-4"},   {"rouge1", "ROUGE-1"},
    {"rouge2", "ROUGE-2"}, {"rougeL", "ROUGE-L"}, {"meteor", "METEOR"}};

const std::vector<std::pair<const char*, const char*>> kCap2MolColumns = {
    {"bleu", "BLEU"},           {"exact_match", "EM"},
    {"levenshtein", "Levenshtein"}, {"maccs_fts", "MACCS FTS"},
    {"rdk_fts", "RDK FTS"},     {"morgan_fts", "Morgan FTS"},
    {"validity", "Validity"}};

}  // namespace

std::string EvalReport::to_table() const {
  const auto& columns = direction == TaskDirection::Mol2Cap
                            ? kMol2CapColumns
                            : kCap2MolColumns;
  std::ostringstream header;
  std::ostringstream values;
  for (const auto& [key, label] : columns) {
    header << std::setw(12) << label;
    const auto it = metrics.find(key);
    values << std::setw(12) << std::fixed << std::setprecision(4)
           << (it == metrics.end() ? 0.0 : it->second);
  }
  return header.str() + "\n" + values.str() + "\n";
}

EvalReport evaluate_mol2cap(const std::vector<std::string>& references,
                            const std::vector<std::string>& hypotheses) {
  require_paired(references.size(), hypotheses.size());
  EvalReport report;
  report.direction = TaskDirection::Mol2Cap;
  report.sample_count = static_cast<int>(references.size());
  report.metrics["bleu2"] = bleu(references, hypotheses, 2);
  report.metrics["bleu4"] = bleu(references, hypotheses, 4);
  report.metrics["rouge1"] = rouge(references, hypotheses, RougeVariant::Rouge1);
  report.metrics["rouge2"] = rouge(references, hypotheses, RougeVariant::Rouge2);
  report.metrics["rougeL"] = rouge(references, hypotheses, RougeVariant::RougeL);
  report.metrics["meteor"] = meteor(references, hypotheses);
  return report;
}

EvalReport evaluate_cap2mol(const std::vector<std::string>& references,
                            const std::vector<std::string>& hypotheses) {
  require_paired(references.size(), hypotheses.size());
  EvalReport report;
  report.direction = TaskDirection::Cap2Mol;
  report.sample_count = static_cast<int>(references.size());

  // SMILES BLEU runs over character tokens.
  std::vector<std::vector<std::string>> ref_chars;
  std::vector<std::vector<std::string>> hyp_chars;
  for (std::size_t i = 0; i < references.size(); ++i) {
    ref_chars.push_back(character_tokens(references[i]));
    hyp_chars.push_back(character_tokens(hypotheses[i]));
  }
  report.metrics["bleu"] = bleu_tokens(ref_chars, hyp_chars, 4);
  report.metrics["exact_match"] = exact_match(references, hypotheses);

  double lev_sum = 0.0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    lev_sum += levenshtein(references[i], hypotheses[i]);
  }
  report.metrics["levenshtein"] =
      lev_sum / static_cast<double>(references.size());

  report.metrics["maccs_fts"] =
      fingerprint_fts(references, hypotheses, FingerprintKind::Keys);
  report.metrics["rdk_fts"] =
      fingerprint_fts(references, hypotheses, FingerprintKind::Path);
  report.metrics["morgan_fts"] =
      fingerprint_fts(references, hypotheses, FingerprintKind::Morgan);
  report.metrics["validity"] = validity(hypotheses);

  int invalid = 0;
  for (const std::string& hyp : hypotheses) invalid += !is_valid_smiles(hyp);
  report.invalid_count = invalid;
  return report;
}

}  // namespace molforge
