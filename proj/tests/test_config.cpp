//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "molforge/config.hpp"
#include "molforge/jsonl.hpp"
#include "molforge/runner.hpp"

using namespace molforge;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("config: defaults match the shipped hyper-parameters") {
  const RunConfig config = load_config(std::nullopt, {}, json::object());
  CHECK(config.generation.temperature == 0.75);
  CHECK(config.generation.top_p == 0.85);
  CHECK(config.generation.top_k == 40);
  CHECK(config.generation.max_new_tokens == 512);
  CHECK(config.generation.num_return_sequences == 1);
  CHECK(config.n_examples == 2);
  CHECK(config.bm25_k1 == 1.5);
  CHECK(config.bm25_b == 0.75);
  CHECK(config.scorer_model == "galactica-125m");
}

TEST_CASE("config: precedence flags > env > file > defaults") {
  const std::string file = write_temp(
      "molforge_config_test.json",
      R"({"teacher_endpoint": "http://file:1", "n_examples": 3,
          "generation": {"temperature": 0.5}})");

  // File only.
  RunConfig from_file = load_config(file, {}, json::object());
  CHECK(from_file.teacher_endpoint == "http://file:1");
  CHECK(from_file.n_examples == 3);
  CHECK(from_file.generation.temperature == 0.5);

  // Env overrides file.
  RunConfig with_env = load_config(
      file, {{"MOLFORGE_ENDPOINT", "http://env:2"}}, json::object());
  CHECK(with_env.teacher_endpoint == "http://env:2");

  // Flags override both.
  RunConfig with_flags = load_config(
      file, {{"MOLFORGE_ENDPOINT", "http://env:2"}},
      json{{"teacher_endpoint", "http://flag:3"},
           {"generation", json{{"temperature", 0.9}}}});
  CHECK(with_flags.teacher_endpoint == "http://flag:3");
  CHECK(with_flags.generation.temperature == 0.9);
  CHECK(with_flags.n_examples == 3);  // untouched file value survives

  std::filesystem::remove(file);
}

TEST_CASE("config: unknown keys are rejected with their path") {
  try {
    load_config(std::nullopt, {},
                json{{"generation", json{{"temprature", 0.7}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigErrorKind::UnknownKey);
    CHECK(e.key_path() == "generation.temprature");
  }

  CHECK_THROWS_AS(
      load_config(std::nullopt, {}, json{{"no_such_key", 1}}), ConfigError);
}

TEST_CASE("config: type errors carry the key path") {
  try {
    load_config(std::nullopt, {}, json{{"n_examples", "two"}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigErrorKind::TypeError);
    CHECK(e.key_path() == "n_examples");
  }

  try {
    load_config(std::nullopt, {}, json{{"direction", "sideways"}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigErrorKind::BadValue);
  }
}

TEST_CASE("config: JSON snapshot round trip") {
  RunConfig config;
  config.train_path = "train.jsonl";
  config.seed = 99;
  config.direction = TaskDirection::Cap2Mol;
  const json snapshot = config.to_json();

  RunConfig restored = load_config(std::nullopt, {}, snapshot);
  CHECK(restored.train_path == "train.jsonl");
  CHECK(restored.seed == 99);
  CHECK(restored.direction == TaskDirection::Cap2Mol);
}

namespace {

std::string toy_dataset_file(const std::string& name, int items) {
  static const std::vector<std::string> smiles = {
      "CCO", "CCCO", "CC(=O)O", "c1ccccc1", "CCN", "CC(C)O"};
  std::string content;
  for (int i = 0; i < items; ++i) {
    const json row = {{"id", "c" + std::to_string(i)},
                      {"smiles", smiles[i % smiles.size()]},
                      {"caption", "caption text " + std::to_string(i)}};
    content += row.dump() + "\n";
  }
  return write_temp(name, content);
}

}  // namespace

TEST_CASE("runner: evaluate rejects mismatched id sets, listing them") {
  const std::string run_dir =
      (std::filesystem::temp_directory_path() / "molforge_eval_run").string();
  const std::string preds = write_temp(
      "molforge_preds.jsonl",
      json{{"id", "a"}, {"output", "CCO"}}.dump() + "\n" +
          json{{"id", "b"}, {"output", "CCN"}}.dump() + "\n");
  const std::string refs = write_temp(
      "molforge_refs.jsonl",
      json{{"id", "a"}, {"target", "CCO"}}.dump() + "\n" +
          json{{"id", "zz"}, {"target", "CCC"}}.dump() + "\n");

  RunConfig config;
  config.output_dir = run_dir;
  config.direction = TaskDirection::Cap2Mol;
  auto ctx = runner::make_context(config, "evaluate", /*needs_llm=*/false);
  try {
    runner::cmd_evaluate(ctx, preds, refs);
    FAIL("expected LengthMismatch");
  } catch (const LengthMismatch& e) {
    const std::string what = e.what();
    CHECK(what.find("zz") != std::string::npos);
    CHECK(what.find("b") != std::string::npos);
  }

  std::filesystem::remove(preds);
  std::filesystem::remove(refs);
  std::filesystem::remove_all(run_dir);
}

TEST_CASE("runner: manifest records config, hashes, and seed") {
  const std::string run_dir =
      (std::filesystem::temp_directory_path() / "molforge_manifest_run")
          .string();
  std::filesystem::remove_all(run_dir);
  const std::string train = toy_dataset_file("molforge_train_m.jsonl", 4);

  RunConfig config;
  config.train_path = train;
  config.output_dir = run_dir;
  config.mock = true;
  config.seed = 1234;
  config.deterministic_clock = true;
  auto ctx = runner::make_context(config, "index", /*needs_llm=*/false);
  runner::cmd_index(ctx);

  std::ifstream in(run_dir + "/manifest.json");
  REQUIRE(in.good());
  const json manifest = json::parse(in);
  CHECK(manifest["command"] == "index");
  CHECK(manifest["seed"] == 1234);
  CHECK(manifest["config"]["train_path"] == train);
  CHECK(manifest["input_hashes"].contains(train));
  CHECK(manifest["input_hashes"][train] == file_digest(train));
  CHECK(manifest["versions"].contains("molforge"));
  CHECK(manifest["timestamp"] == 0);  // deterministic clock

  std::filesystem::remove(train);
  std::filesystem::remove_all(run_dir);
}

TEST_CASE("runner: full mock pipeline produces every artifact") {
  const std::string run_dir =
      (std::filesystem::temp_directory_path() / "molforge_pipe_run").string();
  std::filesystem::remove_all(run_dir);
  const std::string train = toy_dataset_file("molforge_train_p.jsonl", 6);

  RunConfig config;
  config.train_path = train;
  config.output_dir = run_dir;
  config.mock = true;
  config.deterministic_clock = true;
  config.direction = TaskDirection::Cap2Mol;
  config.embedding_dim = 64;

  auto ctx = runner::make_context(config, "pipeline");
  const auto result = runner::cmd_pipeline(ctx);
  CHECK(result.exit_code == runner::kExitOk);

  for (const char* artifact :
       {"manifest.json", "index.json", "alignments.cap2mol.jsonl",
        "naive_sft.cap2mol.train.jsonl", "instruction.cap2mol.train.jsonl",
        "icmt.cap2mol.train.jsonl", "cot_icmt.cap2mol.train.jsonl",
        "cache.jsonl"}) {
    CAPTURE(artifact);
    CHECK(std::filesystem::exists(run_dir + "/" + artifact));
  }

  std::filesystem::remove(train);
  std::filesystem::remove_all(run_dir);
}

#ifdef MOLFORGE_CLI_PATH
TEST_CASE("cli: exit codes for usage and config failures") {
  const std::string cli = MOLFORGE_CLI_PATH;

  // Unknown subcommand -> usage (1).
  CHECK(WEXITSTATUS(std::system((cli + " frobnicate >/dev/null 2>&1").c_str())) ==
        1);

  // extract without endpoints or --mock -> config error (2) before work.
  const std::string train = toy_dataset_file("molforge_cli_train.jsonl", 3);
  const std::string run_dir =
      (std::filesystem::temp_directory_path() / "molforge_cli_run").string();
  const std::string cmd = cli + " extract --train " + train +
                          " --output-dir " + run_dir + " >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 2);

  std::filesystem::remove(train);
  std::filesystem::remove_all(run_dir);
}
#endif
