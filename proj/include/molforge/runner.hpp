//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_RUNNER_HPP
#define MOLFORGE_RUNNER_HPP

#include <memory>
#include <string>

#include <json.hpp>

#include "molforge/alignment.hpp"
#include "molforge/config.hpp"
#include "molforge/emitter.hpp"
#include "molforge/evaluation.hpp"

namespace molforge::runner {

// Exit codes shared by the CLI: 0 success, 1 usage, 2 config, 3 stage
// failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitStage = 3;

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

// Wired clients, provider, templates, and store for one run directory.
struct RunContext {
  RunConfig config;
  std::string run_dir;
  std::shared_ptr<ResponseCache> cache;
  std::unique_ptr<LlmClient> teacher;
  std::unique_ptr<LlmClient> scorer;
  std::unique_ptr<EmbeddingProvider> provider;
  std::unique_ptr<AlignmentStore> store;
  TemplateSet templates;

  AlignmentPipeline make_pipeline() {
    return AlignmentPipeline(templates, *teacher, *scorer, *store);
  }
};

// Creates the run directory, opens cache and store, builds transports
// (mock mode uses the in-tree deterministic endpoints), and writes the
// manifest for `command`. Commands that never call an LLM (index, emit,
// evaluate, probe) set `needs_llm` false so missing endpoints are not an
// error.
RunContext make_context(const RunConfig& config, const std::string& command,
                        bool needs_llm = true);

CommandResult cmd_index(RunContext& ctx);
CommandResult cmd_stage(RunContext& ctx, Stage stage);
CommandResult cmd_emit(RunContext& ctx, Paradigm paradigm,
                       const std::string& split,
                       const std::string& output_override);
CommandResult cmd_evaluate(RunContext& ctx, const std::string& predictions,
                           const std::string& references);
CommandResult cmd_probe(RunContext& ctx, ProbeKind kind,
                        const std::string& input_path,
                        const std::string& output_path);
CommandResult cmd_pipeline(RunContext& ctx);

}  // namespace molforge::runner

#endif  // MOLFORGE_RUNNER_HPP
