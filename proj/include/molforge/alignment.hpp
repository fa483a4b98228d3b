//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_ALIGNMENT_HPP
#define MOLFORGE_ALIGNMENT_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "molforge/gateway.hpp"
#include "molforge/prompts.hpp"
#include "molforge/retrieval.hpp"

namespace molforge {

enum class Stage { Extract, Reflect, Select };

const char* to_string(Stage stage);
Stage stage_from_string(const std::string& text);

class EmptyTeacherResponse : public std::runtime_error {
 public:
  explicit EmptyTeacherResponse(const std::string& what)
      : std::runtime_error(what) {}
};

class StageOrderError : public std::runtime_error {
 public:
  explicit StageOrderError(const std::string& what)
      : std::runtime_error(what) {}
};

// The mapping-chain record for one item: zero-shot alignment, reflected
// alignment, their perplexities, and the selected branch.
struct AlignmentRecord {
  std::string id;
  TaskDirection direction = TaskDirection::Mol2Cap;
  std::string input;
  std::string target;
  std::string k0;
  std::optional<std::string> k1;
  std::optional<double> ppl0;
  std::optional<double> ppl1;
  std::optional<std::string> selected;  // "K0" or "K1"
  std::string selected_text;
  std::map<std::string, std::int64_t> stage_timestamps;  // stage -> epoch ms
  std::string teacher_model;
  std::string scorer_model;
  std::vector<std::string> warnings;

  bool extract_done(const std::string& teacher) const;
  bool reflect_done(const std::string& teacher) const;
  bool select_done(const std::string& scorer) const;

  // Throws std::logic_error if the record breaks its invariants
  // (selected_text mismatch, selection not matching min perplexity).
  void validate() const;

  nlohmann::json to_json() const;
  static AlignmentRecord from_json(const nlohmann::json& record);
};

// Append-only JSONL store; each line is a full record snapshot and the
// last line per item id wins on load. Writes are serialized.
class AlignmentStore {
 public:
  // Empty path keeps the store in memory (tests).
  explicit AlignmentStore(std::string path = "");

  std::optional<AlignmentRecord> get(const std::string& id) const;
  std::vector<AlignmentRecord> all() const;  // ascending id
  void upsert(const AlignmentRecord& record);
  std::size_t size() const;

  // id -> alignment text maps used to assemble retrieval contexts.
  std::map<std::string, std::string> k0_texts() const;
  std::map<std::string, std::string> selected_texts() const;

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::string, AlignmentRecord> records_;
};

struct StageConfig {
  TaskDirection direction = TaskDirection::Mol2Cap;
  int n_examples = 2;
  double failure_threshold = 0.05;
  int max_inflight = 4;
  bool deterministic_clock = false;
  bool select_fallback_k0 = false;  // accept items lacking K1 at select
  GenerationParams generation;
};

struct StageReport {
  Stage stage = Stage::Extract;
  int processed = 0;
  int skipped = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // id, error

  int failed() const { return static_cast<int>(failures.size()); }
  bool within_threshold(double threshold, int total) const {
    if (total == 0) return true;
    return static_cast<double>(failed()) / total <= threshold;
  }
  nlohmann::json to_json() const;
};

// Executes the three stages over a dataset with per-item checkpointing.
// Re-running a completed stage performs no new LLM calls.
class AlignmentPipeline {
 public:
  AlignmentPipeline(const TemplateSet& templates, LlmClient& teacher,
                    LlmClient& scorer, AlignmentStore& store);

  // Single-item operations.
  std::string extract_zero_shot(const DatasetItem& item,
                                TaskDirection direction,
                                const GenerationParams& params);
  std::string reflect_in_context(const DatasetItem& item,
                                 TaskDirection direction,
                                 const std::vector<ContextExample>& context,
                                 const GenerationParams& params);
  AlignmentRecord select_alignment(AlignmentRecord record,
                                   bool fallback_on_k1_failure = true);

  // Batch stages. Reflect needs the corpus index (and provider for
  // mol2cap); neighbors' zero-shot alignments come from the store.
  StageReport run_extract(const std::vector<DatasetItem>& items,
                          const StageConfig& config);
  StageReport run_reflect(const std::vector<DatasetItem>& items,
                          const CorpusIndex& corpus,
                          EmbeddingProvider* provider,
                          const StageConfig& config);
  StageReport run_select(const std::vector<DatasetItem>& items,
                         const StageConfig& config);

 private:
  std::int64_t now_ms(bool deterministic) const;

  const TemplateSet& templates_;
  LlmClient& teacher_;
  LlmClient& scorer_;
  AlignmentStore& store_;
};

}  // namespace molforge

#endif  // MOLFORGE_ALIGNMENT_HPP
