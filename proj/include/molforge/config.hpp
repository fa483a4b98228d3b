//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_CONFIG_HPP
#define MOLFORGE_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "molforge/gateway.hpp"
#include "molforge/retrieval.hpp"

namespace molforge {

enum class ConfigErrorKind { UnknownKey, TypeError, BadValue, Missing };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& key_path,
              const std::string& what)
      : std::runtime_error(what), kind_(kind), key_path_(key_path) {}

  ConfigErrorKind kind() const { return kind_; }
  const std::string& key_path() const { return key_path_; }

 private:
  ConfigErrorKind kind_;
  std::string key_path_;
};

// Resolved run configuration. Defaults are the shipped teacher/scorer
// sampling parameters and canonical BM25 constants.
struct RunConfig {
  // datasets
  std::string train_path;
  std::string test_path;

  // endpoints
  std::string teacher_endpoint;
  std::string teacher_model = "llama-3-70b-instruct";
  std::string scorer_endpoint;
  std::string scorer_model = "galactica-125m";
  std::string api_key;

  // molecule embeddings
  std::string embedding_provider = "fallback";  // fallback | remote
  std::string embedding_endpoint;
  int embedding_dim = 256;

  // generation + retrieval
  GenerationParams generation;
  int n_examples = 2;
  double bm25_k1 = 1.5;
  double bm25_b = 0.75;

  // run behavior
  std::string cache_path;
  std::string output_dir = "runs/latest";
  std::uint64_t seed = 0;
  int max_inflight = 4;
  double failure_threshold = 0.05;
  bool mock = false;
  bool deterministic_clock = false;
  std::string templates_dir;
  TaskDirection direction = TaskDirection::Mol2Cap;

  // retries
  int retry_max_attempts = 4;
  int retry_base_delay_ms = 250;
  int retry_max_delay_ms = 4000;

  nlohmann::json to_json() const;
};

// Precedence: flag overrides > environment > config file > defaults.
// Unknown keys anywhere raise ConfigError(UnknownKey) with the key path;
// wrong JSON types raise ConfigError(TypeError).
RunConfig load_config(const std::optional<std::string>& file_path,
                      const std::map<std::string, std::string>& env,
                      const nlohmann::json& flag_overrides);

// Apply one JSON document onto a config (used for both file and flags).
void apply_config_json(RunConfig& config, const nlohmann::json& doc,
                       const std::string& path_prefix = "");

// Reads MOLFORGE_ENDPOINT, MOLFORGE_SCORER_ENDPOINT, MOLFORGE_API_KEY.
void apply_config_env(RunConfig& config,
                      const std::map<std::string, std::string>& env);

}  // namespace molforge

#endif  // MOLFORGE_CONFIG_HPP
