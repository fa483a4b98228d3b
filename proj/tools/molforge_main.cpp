//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// molforge: batch driver for the molecule-caption alignment toolchain.
// Commands: index, extract, reflect, select, emit, evaluate, probe,
// pipeline. Exit codes: 0 ok, 1 usage, 2 config, 3 stage failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "molforge/runner.hpp"

namespace {

using molforge::ConfigError;
using molforge::RunConfig;
using nlohmann::json;

std::map<std::string, std::string> environment() {
  std::map<std::string, std::string> env;
  for (const char* name :
       {"MOLFORGE_ENDPOINT", "MOLFORGE_SCORER_ENDPOINT", "MOLFORGE_API_KEY"}) {
    if (const char* value = std::getenv(name)) env[name] = value;
  }
  return env;
}

struct CommonFlags {
  std::string config_file;
  std::string train_path;
  std::string test_path;
  std::string output_dir;
  std::string direction;
  std::string cache_path;
  std::string templates_dir;
  int n_examples = -1;
  std::int64_t seed = -1;
  double temperature = -1.0;
  bool mock = false;
  bool deterministic_clock = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "JSON config file");
    app->add_option("--train", train_path, "training dataset JSONL");
    app->add_option("--test", test_path, "test dataset JSONL");
    app->add_option("--output-dir", output_dir, "run directory");
    app->add_option("--direction", direction, "mol2cap or cap2mol");
    app->add_option("--cache", cache_path, "LLM response cache JSONL");
    app->add_option("--templates-dir", templates_dir,
                    "prompt template directory (default: embedded)");
    app->add_option("--n-examples", n_examples, "context examples per item");
    app->add_option("--seed", seed, "run seed");
    app->add_option("--temperature", temperature, "teacher temperature");
    app->add_flag("--mock", mock, "use the in-tree mock endpoints");
    app->add_flag("--deterministic-clock", deterministic_clock,
                  "zero timestamps for byte-reproducible artifacts");
  }

  json overrides() const {
    json doc = json::object();
    if (!train_path.empty()) doc["train_path"] = train_path;
    if (!test_path.empty()) doc["test_path"] = test_path;
    if (!output_dir.empty()) doc["output_dir"] = output_dir;
    if (!direction.empty()) doc["direction"] = direction;
    if (!cache_path.empty()) doc["cache_path"] = cache_path;
    if (!templates_dir.empty()) doc["templates_dir"] = templates_dir;
    if (n_examples > 0) doc["n_examples"] = n_examples;
    if (seed >= 0) doc["seed"] = seed;
    if (temperature >= 0.0) {
      doc["generation"] = json{{"temperature", temperature}};
    }
    if (mock) doc["mock"] = true;
    if (deterministic_clock) doc["deterministic_clock"] = true;
    return doc;
  }

  RunConfig resolve() const {
    return molforge::load_config(
        config_file.empty() ? std::nullopt
                            : std::optional<std::string>(config_file),
        environment(), overrides());
  }
};

int finish(const molforge::runner::CommandResult& result) {
  std::cout << result.summary.dump(2) << std::endl;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"molecule-caption alignment toolchain"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* index = app.add_subcommand("index", "build the retrieval index");
  auto* extract = app.add_subcommand("extract", "zero-shot alignments");
  auto* reflect = app.add_subcommand("reflect", "in-context reflection");
  auto* select = app.add_subcommand("select", "perplexity selection");

  auto* emit = app.add_subcommand("emit", "write a fine-tuning dataset");
  std::string paradigm = "cot_icmt";
  std::string split = "train";
  std::string emit_output;
  emit->add_option("--paradigm", paradigm,
                   "naive_sft | instruction | icmt | cot_icmt");
  emit->add_option("--split", split, "train or test");
  emit->add_option("--output", emit_output, "output JSONL path");

  auto* evaluate = app.add_subcommand("evaluate", "score model outputs");
  std::string predictions;
  std::string references;
  evaluate->add_option("--predictions", predictions,
                       "JSONL of {id, output}")->required();
  evaluate->add_option("--references", references,
                       "JSONL of {id, target}")->required();

  auto* probe = app.add_subcommand("probe", "equivalent-SMILES test sets");
  std::string probe_kind = "canonical";
  std::string probe_input;
  std::string probe_output;
  probe->add_option("--kind", probe_kind,
                    "canonical | hydrogen | kekulization | cycles");
  probe->add_option("--input", probe_input, "testset JSONL")->required();
  probe->add_option("--output", probe_output, "output JSONL path");

  auto* pipeline = app.add_subcommand(
      "pipeline", "index, extract, reflect, select, emit in one run");

  for (CLI::App* sub : {index, extract, reflect, select, emit, evaluate, probe,
                        pipeline}) {
    flags.attach(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : molforge::runner::kExitUsage;
  }

  try {
    const RunConfig config = flags.resolve();
    using namespace molforge;
    using namespace molforge::runner;

    if (index->parsed()) {
      auto ctx = make_context(config, "index", false);
      return finish(cmd_index(ctx));
    }
    if (extract->parsed()) {
      auto ctx = make_context(config, "extract");
      return finish(cmd_stage(ctx, Stage::Extract));
    }
    if (reflect->parsed()) {
      auto ctx = make_context(config, "reflect");
      return finish(cmd_stage(ctx, Stage::Reflect));
    }
    if (select->parsed()) {
      auto ctx = make_context(config, "select");
      return finish(cmd_stage(ctx, Stage::Select));
    }
    if (emit->parsed()) {
      auto ctx = make_context(config, "emit", false);
      return finish(cmd_emit(ctx, paradigm_from_string(paradigm), split,
                             emit_output));
    }
    if (evaluate->parsed()) {
      auto ctx = make_context(config, "evaluate", false);
      return finish(cmd_evaluate(ctx, predictions, references));
    }
    if (probe->parsed()) {
      auto ctx = make_context(config, "probe", false);
      return finish(cmd_probe(ctx, probe_from_string(probe_kind), probe_input,
                              probe_output));
    }
    if (pipeline->parsed()) {
      auto ctx = make_context(config, "pipeline");
      return finish(cmd_pipeline(ctx));
    }
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"key", e.key_path()},
                      {"message", e.what()}}
                     .dump()
              << std::endl;
    return molforge::runner::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "stage"}, {"message", e.what()}}.dump()
              << std::endl;
    return molforge::runner::kExitStage;
  }
  return molforge::runner::kExitUsage;
}
