//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/config.hpp"

#include <fstream>
#include <functional>

namespace molforge {

using nlohmann::json;

json RunConfig::to_json() const {
  return {
      {"train_path", train_path},
      {"test_path", test_path},
      {"teacher_endpoint", teacher_endpoint},
      {"teacher_model", teacher_model},
      {"scorer_endpoint", scorer_endpoint},
      {"scorer_model", scorer_model},
      {"embedding",
       {{"provider", embedding_provider},
        {"endpoint", embedding_endpoint},
        {"dim", embedding_dim}}},
      {"generation",
       {{"temperature", generation.temperature},
        {"top_p", generation.top_p},
        {"top_k", generation.top_k},
        {"max_new_tokens", generation.max_new_tokens},
        {"num_return_sequences", generation.num_return_sequences}}},
      {"retrieval", {{"bm25_k1", bm25_k1}, {"bm25_b", bm25_b}}},
      {"retry",
       {{"max_attempts", retry_max_attempts},
        {"base_delay_ms", retry_base_delay_ms},
        {"max_delay_ms", retry_max_delay_ms}}},
      {"n_examples", n_examples},
      {"cache_path", cache_path},
      {"output_dir", output_dir},
      {"seed", seed},
      {"max_inflight", max_inflight},
      {"failure_threshold", failure_threshold},
      {"mock", mock},
      {"deterministic_clock", deterministic_clock},
      {"templates_dir", templates_dir},
      {"direction", to_string(direction)},
  };
}

namespace {

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

void expect(bool ok, ConfigErrorKind kind, const std::string& path,
            const std::string& what) {
  if (!ok) throw ConfigError(kind, path, what);
}

Setter string_setter(std::string RunConfig::* field) {
  return [field](RunConfig& config, const json& value, const std::string& path) {
    expect(value.is_string(), ConfigErrorKind::TypeError, path,
           path + " must be a string, got " + value.dump());
    config.*field = value.get<std::string>();
  };
}

Setter int_setter(int RunConfig::* field, int min_value) {
  return [field, min_value](RunConfig& config, const json& value,
                            const std::string& path) {
    expect(value.is_number_integer(), ConfigErrorKind::TypeError, path,
           path + " must be an integer, got " + value.dump());
    const int v = value.get<int>();
    expect(v >= min_value, ConfigErrorKind::BadValue, path,
           path + " must be >= " + std::to_string(min_value));
    config.*field = v;
  };
}

Setter double_setter(double RunConfig::* field) {
  return [field](RunConfig& config, const json& value, const std::string& path) {
    expect(value.is_number(), ConfigErrorKind::TypeError, path,
           path + " must be a number, got " + value.dump());
    config.*field = value.get<double>();
  };
}

Setter bool_setter(bool RunConfig::* field) {
  return [field](RunConfig& config, const json& value, const std::string& path) {
    expect(value.is_boolean(), ConfigErrorKind::TypeError, path,
           path + " must be a boolean, got " + value.dump());
    config.*field = value.get<bool>();
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> table;
    table["train_path"] = string_setter(&RunConfig::train_path);
    table["test_path"] = string_setter(&RunConfig::test_path);
    table["teacher_endpoint"] = string_setter(&RunConfig::teacher_endpoint);
    table["teacher_model"] = string_setter(&RunConfig::teacher_model);
    table["scorer_endpoint"] = string_setter(&RunConfig::scorer_endpoint);
    table["scorer_model"] = string_setter(&RunConfig::scorer_model);
    table["embedding.provider"] = [](RunConfig& config, const json& value,
                                     const std::string& path) {
      expect(value.is_string(), ConfigErrorKind::TypeError, path,
             path + " must be a string");
      const std::string v = value.get<std::string>();
      expect(v == "fallback" || v == "remote", ConfigErrorKind::BadValue, path,
             path + " must be 'fallback' or 'remote'");
      config.embedding_provider = v;
    };
    table["embedding.endpoint"] = string_setter(&RunConfig::embedding_endpoint);
    table["embedding.dim"] = int_setter(&RunConfig::embedding_dim, 1);
    table["generation.temperature"] = [](RunConfig& config, const json& value,
                                         const std::string& path) {
      expect(value.is_number(), ConfigErrorKind::TypeError, path,
             path + " must be a number");
      config.generation.temperature = value.get<double>();
    };
    table["generation.top_p"] = [](RunConfig& config, const json& value,
                                   const std::string& path) {
      expect(value.is_number(), ConfigErrorKind::TypeError, path,
             path + " must be a number");
      config.generation.top_p = value.get<double>();
    };
    table["generation.top_k"] = [](RunConfig& config, const json& value,
                                   const std::string& path) {
      expect(value.is_number_integer(), ConfigErrorKind::TypeError, path,
             path + " must be an integer");
      config.generation.top_k = value.get<int>();
    };
    table["generation.max_new_tokens"] = [](RunConfig& config,
                                            const json& value,
                                            const std::string& path) {
      expect(value.is_number_integer(), ConfigErrorKind::TypeError, path,
             path + " must be an integer");
      config.generation.max_new_tokens = value.get<int>();
    };
    table["generation.num_return_sequences"] = [](RunConfig& config,
                                                  const json& value,
                                                  const std::string& path) {
      expect(value.is_number_integer(), ConfigErrorKind::TypeError, path,
             path + " must be an integer");
      config.generation.num_return_sequences = value.get<int>();
    };
    table["retrieval.bm25_k1"] = double_setter(&RunConfig::bm25_k1);
    table["retrieval.bm25_b"] = double_setter(&RunConfig::bm25_b);
    table["retry.max_attempts"] = int_setter(&RunConfig::retry_max_attempts, 1);
    table["retry.base_delay_ms"] =
        int_setter(&RunConfig::retry_base_delay_ms, 0);
    table["retry.max_delay_ms"] = int_setter(&RunConfig::retry_max_delay_ms, 0);
    table["n_examples"] = int_setter(&RunConfig::n_examples, 1);
    table["cache_path"] = string_setter(&RunConfig::cache_path);
    table["output_dir"] = string_setter(&RunConfig::output_dir);
    table["seed"] = [](RunConfig& config, const json& value,
                       const std::string& path) {
      expect(value.is_number_integer(), ConfigErrorKind::TypeError, path,
             path + " must be an integer");
      config.seed = value.get<std::uint64_t>();
    };
    table["max_inflight"] = int_setter(&RunConfig::max_inflight, 1);
    table["failure_threshold"] = double_setter(&RunConfig::failure_threshold);
    table["mock"] = bool_setter(&RunConfig::mock);
    table["deterministic_clock"] =
        bool_setter(&RunConfig::deterministic_clock);
    table["templates_dir"] = string_setter(&RunConfig::templates_dir);
    table["direction"] = [](RunConfig& config, const json& value,
                            const std::string& path) {
      expect(value.is_string(), ConfigErrorKind::TypeError, path,
             path + " must be a string");
      try {
        config.direction = direction_from_string(value.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(ConfigErrorKind::BadValue, path, e.what());
      }
    };
    return table;
  }();
  return table;
}

// Object keys that group leaf settings.
bool is_group(const std::string& path) {
  return path == "embedding" || path == "generation" || path == "retrieval" ||
         path == "retry";
}

}  // namespace

void apply_config_json(RunConfig& config, const json& doc,
                       const std::string& path_prefix) {
  expect(doc.is_object(), ConfigErrorKind::TypeError,
         path_prefix.empty() ? "<root>" : path_prefix,
         "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    const std::string path =
        path_prefix.empty() ? key : path_prefix + "." + key;
    if (is_group(path)) {
      apply_config_json(config, value, path);
      continue;
    }
    auto it = setters().find(path);
    if (it == setters().end()) {
      throw ConfigError(ConfigErrorKind::UnknownKey, path,
                        "unknown config key '" + path + "'");
    }
    it->second(config, value, path);
  }
}

void apply_config_env(RunConfig& config,
                      const std::map<std::string, std::string>& env) {
  auto get = [&](const char* name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("MOLFORGE_ENDPOINT")) config.teacher_endpoint = *v;
  if (auto v = get("MOLFORGE_SCORER_ENDPOINT")) config.scorer_endpoint = *v;
  if (auto v = get("MOLFORGE_API_KEY")) config.api_key = *v;
}

RunConfig load_config(const std::optional<std::string>& file_path,
                      const std::map<std::string, std::string>& env,
                      const json& flag_overrides) {
  RunConfig config;
  if (file_path) {
    std::ifstream in(*file_path);
    if (!in) {
      throw ConfigError(ConfigErrorKind::Missing, "<file>",
                        "cannot open config file " + *file_path);
    }
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      throw ConfigError(ConfigErrorKind::TypeError, "<file>",
                        *file_path + " is not valid JSON");
    }
    apply_config_json(config, doc);
  }
  apply_config_env(config, env);
  if (!flag_overrides.is_null() && !flag_overrides.empty()) {
    apply_config_json(config, flag_overrides);
  }
  return config;
}

}  // namespace molforge
