//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_RETRIEVAL_HPP
#define MOLFORGE_RETRIEVAL_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "molforge/smiles.hpp"

namespace molforge {

class EmptyCorpus : public std::runtime_error {
 public:
  explicit EmptyCorpus(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::runtime_error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

class ProviderUnavailable : public std::runtime_error {
 public:
  explicit ProviderUnavailable(const std::string& what)
      : std::runtime_error(what) {}
};

class InsufficientCorpus : public std::runtime_error {
 public:
  explicit InsufficientCorpus(const std::string& what)
      : std::runtime_error(what) {}
};

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

// BM25 postings over captions plus a unit-norm embedding store over
// molecules. Build once, query concurrently.
struct RetrievalIndex {
  // BM25 side
  std::vector<std::string> doc_ids;               // ascending
  std::map<std::string, int> doc_index;           // id -> position
  std::map<std::string, std::vector<std::pair<int, int>>> postings;  // term -> (doc, tf)
  std::vector<int> doc_lengths;
  double avg_doc_length = 0.0;
  Bm25Params params;

  // embedding side
  int embedding_dim = 0;
  std::map<std::string, std::vector<double>> embeddings;

  int doc_count() const { return static_cast<int>(doc_ids.size()); }

  // Validates unit norm (1e-6) and dimensional consistency.
  void add_embedding(const std::string& id, std::vector<double> vec);
};

// Inverted index over the corpus captions. Throws EmptyCorpus.
RetrievalIndex build_bm25_index(const std::map<std::string, std::string>& corpus,
                                Bm25Params params = {});

// Top-k by BM25 (idf = ln(1 + (N - n + 0.5)/(n + 0.5)), distinct query
// terms). Descending score, ties broken by ascending id; `exclude_id`
// drops the query's own document.
std::vector<ScoredDoc> bm25_query(const RetrievalIndex& index,
                                  const std::string& query, int k,
                                  const std::optional<std::string>& exclude_id =
                                      std::nullopt);

// --- molecule embeddings -------------------------------------------------

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  // One unit-norm vector per input SMILES, in order.
  virtual std::vector<std::vector<double>> embed(
      const std::vector<std::string>& smiles) = 0;
};

// Offline default: morgan bits folded into `dim` buckets and normalized.
class FingerprintEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit FingerprintEmbeddingProvider(int dim = 256, int radius = 2,
                                        int nbits = 2048);
  int dim() const override { return dim_; }
  std::vector<std::vector<double>> embed(
      const std::vector<std::string>& smiles) override;

 private:
  int dim_;
  int radius_;
  int nbits_;
};

// Single-molecule convenience; checks dimension and unit norm.
std::vector<double> embed_molecule(EmbeddingProvider& provider,
                                   const MoleculeGraph& graph);

// Top-k by cosine over the stored embeddings (vectors are unit-norm, so
// cosine is the dot product). Ties broken by ascending id.
std::vector<ScoredDoc> cosine_topk(const RetrievalIndex& index,
                                   const std::vector<double>& query_vec, int k,
                                   const std::optional<std::string>& exclude_id =
                                       std::nullopt);

// --- context assembly ----------------------------------------------------

enum class TaskDirection { Mol2Cap, Cap2Mol };

const char* to_string(TaskDirection direction);
TaskDirection direction_from_string(const std::string& text);

struct DatasetItem {
  std::string id;
  std::string smiles;
  std::string caption;

  const std::string& input(TaskDirection d) const {
    return d == TaskDirection::Mol2Cap ? smiles : caption;
  }
  const std::string& target(TaskDirection d) const {
    return d == TaskDirection::Mol2Cap ? caption : smiles;
  }
};

struct ContextExample {
  std::string neighbor_id;
  std::string neighbor_input;      // caption or SMILES
  std::string neighbor_alignment;  // the neighbor's stored alignment text
  std::string neighbor_target;
  double score = 0.0;
};

// Corpus items plus both retrieval channels. Caption queries use BM25,
// molecule queries use embedding cosine.
struct CorpusIndex {
  RetrievalIndex index;
  std::map<std::string, DatasetItem> items;
};

// Build BM25 over captions and (when a provider is given) the molecule
// embedding store in one pass.
CorpusIndex build_corpus_index(const std::vector<DatasetItem>& items,
                               EmbeddingProvider* provider,
                               Bm25Params params = {});

// The n nearest neighbors of `item` joined with their stored alignments
// and targets; the query item itself is never a candidate. An empty
// alignment map is allowed when `require_alignments` is false (pair-only
// context). Throws InsufficientCorpus when fewer than n neighbors exist.
std::vector<ContextExample> retrieve_context(
    const CorpusIndex& corpus, EmbeddingProvider* provider,
    const DatasetItem& item, TaskDirection direction, int n,
    const std::map<std::string, std::string>& alignments,
    bool require_alignments = true);

}  // namespace molforge

#endif  // MOLFORGE_RETRIEVAL_HPP
