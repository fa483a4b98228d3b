//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_EVALUATION_HPP
#define MOLFORGE_EVALUATION_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "molforge/fingerprints.hpp"
#include "molforge/retrieval.hpp"

namespace molforge {

class LengthMismatch : public std::runtime_error {
 public:
  explicit LengthMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

// --- text metrics --------------------------------------------------------

// Corpus-level BLEU over pre-tokenized sequences: geometric mean of
// modified n-gram precisions (1..max_n) times the brevity penalty, with
// add-epsilon smoothing of zero precisions.
double bleu_tokens(const std::vector<std::vector<std::string>>& references,
                   const std::vector<std::vector<std::string>>& hypotheses,
                   int max_n, double epsilon = 1e-9);

// Caption-tokenized wrapper.
double bleu(const std::vector<std::string>& references,
            const std::vector<std::string>& hypotheses, int max_n);

enum class RougeVariant { Rouge1, Rouge2, RougeL };

// Mean per-pair F1 (clipped n-gram overlap for 1/2, LCS for L).
double rouge(const std::vector<std::string>& references,
             const std::vector<std::string>& hypotheses, RougeVariant variant);

// Unigram matching in two stages (exact, then stemmed), 9:1
// recall-weighted harmonic mean, 0.5*(chunks/matches)^3 fragmentation
// penalty; mean over pairs.
double meteor(const std::vector<std::string>& references,
              const std::vector<std::string>& hypotheses);

struct MeteorAlignment {
  int matches = 0;
  int chunks = 0;
};

// The alignment statistics behind one METEOR pair (exposed so tests can
// pin hand-derived match/chunk counts).
MeteorAlignment meteor_align(const std::vector<std::string>& reference,
                             const std::vector<std::string>& hypothesis);

double meteor_pair(const std::vector<std::string>& reference,
                   const std::vector<std::string>& hypothesis);

// Character-level edit distance with unit costs.
int levenshtein(const std::string& a, const std::string& b);

// --- molecule metrics ------------------------------------------------------

// Fraction of pairs whose canonical SMILES match byte-for-byte; an
// unparseable hypothesis never matches.
double exact_match(const std::vector<std::string>& references,
                   const std::vector<std::string>& hypotheses);

// Mean fingerprint Tanimoto over pairs; invalid hypotheses contribute 0.
double fingerprint_fts(const std::vector<std::string>& references,
                       const std::vector<std::string>& hypotheses,
                       FingerprintKind kind);

// Fraction of hypotheses that parse with valid valences.
double validity(const std::vector<std::string>& hypotheses);

// --- robustness probes ------------------------------------------------------

enum class ProbeKind { Canonical, Hydrogen, Kekulization, Cycles };

const char* to_string(ProbeKind kind);
ProbeKind probe_from_string(const std::string& text);

class ProbeError : public std::runtime_error {
 public:
  ProbeError(const std::string& what, std::vector<std::string> failed_ids)
      : std::runtime_error(what), failed_ids_(std::move(failed_ids)) {}
  const std::vector<std::string>& failed_ids() const { return failed_ids_; }

 private:
  std::vector<std::string> failed_ids_;
};

// Replace each item's SMILES with its equivalent variant; captions are
// untouched. Cycles relabeling derives a per-item seed from `seed` and
// the item id, so output is deterministic.
std::vector<DatasetItem> probe_testset(const std::vector<DatasetItem>& testset,
                                       ProbeKind kind, std::uint64_t seed);

// --- reports ---------------------------------------------------------------

struct EvalReport {
  TaskDirection direction = TaskDirection::Mol2Cap;
  std::map<std::string, double> metrics;
  int sample_count = 0;
  int invalid_count = 0;

  nlohmann::json to_json() const;
  // Flat text table, one header and one value row.
  std::string to_table() const;
};

EvalReport evaluate_mol2cap(const std::vector<std::string>& references,
                            const std::vector<std::string>& hypotheses);

EvalReport evaluate_cap2mol(const std::vector<std::string>& references,
                            const std::vector<std::string>& hypotheses);

}  // namespace molforge

#endif  // MOLFORGE_EVALUATION_HPP
