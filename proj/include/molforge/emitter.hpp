//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_EMITTER_HPP
#define MOLFORGE_EMITTER_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "molforge/alignment.hpp"
#include "molforge/gateway.hpp"
#include "molforge/prompts.hpp"
#include "molforge/retrieval.hpp"

namespace molforge {

// The four fine-tuning paradigms, ordered by how much context each prompt
// carries: raw pair, pair + alignment, pair + neighbor pairs, pair +
// alignment + neighbor chains.
enum class Paradigm { NaiveSft, Instruction, Icmt, CotIcmt };

const char* to_string(Paradigm paradigm);
Paradigm paradigm_from_string(const std::string& text);

class MissingAlignment : public std::runtime_error {
 public:
  explicit MissingAlignment(const std::string& item_id)
      : std::runtime_error("no selected alignment stored for item " + item_id),
        item_id_(item_id) {}
  const std::string& item_id() const { return item_id_; }

 private:
  std::string item_id_;
};

class SchemaViolation : public std::runtime_error {
 public:
  SchemaViolation(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One training file line: chat-shaped messages whose final assistant
// message is the training target, plus provenance metadata.
struct TrainingExample {
  Paradigm paradigm = Paradigm::NaiveSft;
  TaskDirection direction = TaskDirection::Mol2Cap;
  std::vector<ChatMessage> messages;
  std::string item_id;
  std::vector<std::string> neighbor_ids;
  std::string alignment_provenance;  // "K0", "K1", or empty

  nlohmann::json to_json(bool flatten = false) const;
};

// Build one example; `alignment` may be empty for paradigms that do not
// use it and `context` likewise.
TrainingExample build_training_example(
    Paradigm paradigm, TaskDirection direction, const TemplateSet& templates,
    const DatasetItem& item, const std::string& alignment,
    const std::string& alignment_provenance,
    const std::vector<ContextExample>& context);

struct EmitStats {
  std::string path;
  int lines = 0;
  int overflow = 0;  // token estimate above the cutoff (emitted anyway)
};

// Serialize the dataset under a paradigm into JSONL at `output_path`,
// ordered by item id, byte-stable across runs for identical stores.
EmitStats emit(Paradigm paradigm, const std::vector<DatasetItem>& dataset,
               const AlignmentStore& store, const CorpusIndex& corpus,
               EmbeddingProvider* provider, int n_examples,
               const std::string& output_path, const TemplateSet& templates,
               TaskDirection direction, bool flatten = false,
               int token_cutoff = 4096);

struct ValidationReport {
  int lines = 0;
  std::vector<std::size_t> overflow_lines;  // 1-based

  nlohmann::json to_json() const;
};

// Per-line schema check plus token-length estimation against the cutoff.
// Malformed lines throw SchemaViolation with the 1-based line number.
ValidationReport validate_file(const std::string& path, Paradigm paradigm,
                               int token_cutoff = 4096);

}  // namespace molforge

#endif  // MOLFORGE_EMITTER_HPP
