//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "molforge/fingerprints.hpp"
#include "molforge/text.hpp"

namespace molforge {

const char* to_string(TaskDirection direction) {
  return direction == TaskDirection::Mol2Cap ? "mol2cap" : "cap2mol";
}

TaskDirection direction_from_string(const std::string& text) {
  if (text == "mol2cap") return TaskDirection::Mol2Cap;
  if (text == "cap2mol") return TaskDirection::Cap2Mol;
  throw std::invalid_argument("unknown task direction: " + text);
}

void RetrievalIndex::add_embedding(const std::string& id,
                                   std::vector<double> vec) {
  if (embedding_dim == 0) embedding_dim = static_cast<int>(vec.size());
  if (static_cast<int>(vec.size()) != embedding_dim) {
    throw DimensionMismatch("embedding for " + id + " has dimension " +
                            std::to_string(vec.size()) + ", store expects " +
                            std::to_string(embedding_dim));
  }
  double norm = 0.0;
  for (double x : vec) norm += x * x;
  norm = std::sqrt(norm);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw DimensionMismatch("embedding for " + id + " is not unit-norm");
  }
  embeddings[id] = std::move(vec);
}

RetrievalIndex build_bm25_index(const std::map<std::string, std::string>& corpus,
                                Bm25Params params) {
  if (corpus.empty()) throw EmptyCorpus("bm25 corpus is empty");

  RetrievalIndex index;
  index.params = params;
  for (const auto& [id, caption] : corpus) {
    const int doc = index.doc_count();
    index.doc_ids.push_back(id);
    index.doc_index[id] = doc;

    const std::vector<std::string> tokens = tokenize_caption(caption);
    index.doc_lengths.push_back(static_cast<int>(tokens.size()));
    std::map<std::string, int> tf;
    for (const std::string& token : tokens) ++tf[token];
    for (const auto& [term, count] : tf) {
      index.postings[term].emplace_back(doc, count);
    }
  }
  double total = 0.0;
  for (int len : index.doc_lengths) total += len;
  index.avg_doc_length = total / index.doc_count();
  return index;
}

namespace {

std::vector<ScoredDoc> rank_topk(std::vector<ScoredDoc> scored, int k) {
  std::sort(scored.begin(), scored.end(),
            [](const ScoredDoc& a, const ScoredDoc& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (static_cast<int>(scored.size()) > k) scored.resize(k);
  return scored;
}

}  // namespace

std::vector<ScoredDoc> bm25_query(const RetrievalIndex& index,
                                  const std::string& query, int k,
                                  const std::optional<std::string>& exclude_id) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  const double n_docs = index.doc_count();
  std::vector<double> scores(index.doc_count(), 0.0);

  std::set<std::string> seen;
  for (const std::string& term : tokenize_caption(query)) {
    if (!seen.insert(term).second) continue;  // distinct query terms
    auto it = index.postings.find(term);
    if (it == index.postings.end()) continue;
    const auto& posting = it->second;
    const double df = static_cast<double>(posting.size());
    const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
    for (const auto& [doc, tf] : posting) {
      const double len_norm =
          1.0 - index.params.b +
          index.params.b * index.doc_lengths[doc] / index.avg_doc_length;
      scores[doc] += idf * (tf * (index.params.k1 + 1.0)) /
                     (tf + index.params.k1 * len_norm);
    }
  }

  std::vector<ScoredDoc> scored;
  scored.reserve(index.doc_count());
  for (int doc = 0; doc < index.doc_count(); ++doc) {
    if (exclude_id && index.doc_ids[doc] == *exclude_id) continue;
    scored.push_back({index.doc_ids[doc], scores[doc]});
  }
  return rank_topk(std::move(scored), k);
}

FingerprintEmbeddingProvider::FingerprintEmbeddingProvider(int dim, int radius,
                                                           int nbits)
    : dim_(dim), radius_(radius), nbits_(nbits) {
  if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
}

std::vector<std::vector<double>> FingerprintEmbeddingProvider::embed(
    const std::vector<std::string>& smiles) {
  std::vector<std::vector<double>> out;
  out.reserve(smiles.size());
  for (const std::string& text : smiles) {
    const Fingerprint fp =
        morgan_fingerprint(parse_smiles(text), radius_, nbits_);
    std::vector<double> vec(dim_, 0.0);
    for (int bit : fp.set_bits()) vec[bit % dim_] += 1.0;
    double norm = 0.0;
    for (double x : vec) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      // A bond-free single atom still has one morgan bit, so this only
      // guards pathological custom parameters.
      vec[0] = 1.0;
    } else {
      for (double& x : vec) x /= norm;
    }
    out.push_back(std::move(vec));
  }
  return out;
}

std::vector<double> embed_molecule(EmbeddingProvider& provider,
                                   const MoleculeGraph& graph) {
  auto vectors = provider.embed({write_smiles(graph)});
  if (vectors.size() != 1 ||
      static_cast<int>(vectors[0].size()) != provider.dim()) {
    throw DimensionMismatch("provider returned dimension " +
                            std::to_string(vectors.empty() ? 0
                                                           : vectors[0].size()) +
                            ", declared " + std::to_string(provider.dim()));
  }
  double norm = 0.0;
  for (double x : vectors[0]) norm += x * x;
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-6) {
    throw DimensionMismatch("provider returned a non-unit vector");
  }
  return vectors[0];
}

std::vector<ScoredDoc> cosine_topk(const RetrievalIndex& index,
                                   const std::vector<double>& query_vec, int k,
                                   const std::optional<std::string>& exclude_id) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<int>(query_vec.size()) != index.embedding_dim) {
    throw DimensionMismatch("query dimension " +
                            std::to_string(query_vec.size()) +
                            " differs from store dimension " +
                            std::to_string(index.embedding_dim));
  }
  std::vector<ScoredDoc> scored;
  scored.reserve(index.embeddings.size());
  for (const auto& [id, vec] : index.embeddings) {
    if (exclude_id && id == *exclude_id) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < vec.size(); ++i) dot += vec[i] * query_vec[i];
    scored.push_back({id, dot});
  }
  return rank_topk(std::move(scored), k);
}

CorpusIndex build_corpus_index(const std::vector<DatasetItem>& items,
                               EmbeddingProvider* provider,
                               Bm25Params params) {
  std::map<std::string, std::string> captions;
  CorpusIndex corpus;
  for (const DatasetItem& item : items) {
    captions[item.id] = item.caption;
    corpus.items[item.id] = item;
  }
  corpus.index = build_bm25_index(captions, params);

  if (provider != nullptr) {
    std::vector<std::string> smiles;
    smiles.reserve(items.size());
    for (const std::string& id : corpus.index.doc_ids) {
      smiles.push_back(corpus.items.at(id).smiles);
    }
    const auto vectors = provider->embed(smiles);
    if (vectors.size() != smiles.size()) {
      throw DimensionMismatch("provider returned a short batch");
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      corpus.index.add_embedding(corpus.index.doc_ids[i], vectors[i]);
    }
  }
  return corpus;
}

std::vector<ContextExample> retrieve_context(
    const CorpusIndex& corpus, EmbeddingProvider* provider,
    const DatasetItem& item, TaskDirection direction, int n,
    const std::map<std::string, std::string>& alignments,
    bool require_alignments) {
  const bool self_in_corpus = corpus.items.contains(item.id);
  const int available =
      corpus.index.doc_count() - (self_in_corpus ? 1 : 0);
  if (available < n) {
    throw InsufficientCorpus("need " + std::to_string(n) +
                             " neighbors but corpus holds " +
                             std::to_string(available) + " candidates");
  }

  std::vector<ScoredDoc> ranked;
  if (direction == TaskDirection::Cap2Mol) {
    ranked = bm25_query(corpus.index, item.caption, n, item.id);
  } else {
    if (provider == nullptr) {
      throw ProviderUnavailable("molecule retrieval requires an embedding provider");
    }
    const auto query_vec = embed_molecule(*provider, parse_smiles(item.smiles));
    ranked = cosine_topk(corpus.index, query_vec, n, item.id);
  }

  std::vector<ContextExample> context;
  context.reserve(ranked.size());
  for (const ScoredDoc& doc : ranked) {
    const DatasetItem& neighbor = corpus.items.at(doc.id);
    ContextExample example;
    example.neighbor_id = doc.id;
    example.neighbor_input = neighbor.input(direction);
    example.neighbor_target = neighbor.target(direction);
    example.score = doc.score;
    auto it = alignments.find(doc.id);
    if (it != alignments.end()) {
      example.neighbor_alignment = it->second;
    } else if (require_alignments) {
      throw std::runtime_error("no stored alignment for neighbor " + doc.id);
    }
    context.push_back(std::move(example));
  }
  return context;
}

}  // namespace molforge
