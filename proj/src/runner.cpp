//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "molforge/jsonl.hpp"
#include "molforge/text.hpp"

namespace molforge::runner {

using nlohmann::json;

namespace {

std::shared_ptr<HttpTransport> make_transport(const RunConfig& config,
                                              const std::string& endpoint,
                                              std::uint64_t mock_seed,
                                              bool needs_llm) {
  if (config.mock || (!needs_llm && endpoint.empty())) {
    return std::make_shared<MockLlmTransport>(mock_seed);
  }
  if (endpoint.empty()) {
    throw ConfigError(ConfigErrorKind::Missing, "teacher_endpoint",
                      "no endpoint configured; set MOLFORGE_ENDPOINT / "
                      "MOLFORGE_SCORER_ENDPOINT or pass --mock");
  }
  return std::make_shared<HttplibTransport>(endpoint, config.api_key);
}

void write_manifest(const RunConfig& config, const std::string& run_dir,
                    const std::string& command) {
  json input_hashes = json::object();
  for (const std::string& path : {config.train_path, config.test_path}) {
    if (!path.empty() && std::filesystem::exists(path)) {
      input_hashes[path] = file_digest(path);
    }
  }
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const json manifest = {
      {"command", command},
      {"config", config.to_json()},
      {"input_hashes", input_hashes},
      {"versions", {{"molforge", "0.1.0"}}},
      {"seed", config.seed},
      {"timestamp",
       config.deterministic_clock
           ? 0
           : std::chrono::duration_cast<std::chrono::milliseconds>(now)
                 .count()},
  };
  std::ofstream out(run_dir + "/manifest.json");
  out << manifest.dump(2) << '\n';
}

StageConfig stage_config(const RunConfig& config) {
  StageConfig out;
  out.direction = config.direction;
  out.n_examples = config.n_examples;
  out.failure_threshold = config.failure_threshold;
  out.max_inflight = config.max_inflight;
  out.deterministic_clock = config.deterministic_clock;
  out.generation = config.generation;
  return out;
}

std::vector<DatasetItem> load_split(const RunConfig& config,
                                    const std::string& split) {
  const std::string& path =
      split == "test" ? config.test_path : config.train_path;
  if (path.empty()) {
    throw ConfigError(ConfigErrorKind::Missing,
                      split == "test" ? "test_path" : "train_path",
                      "no dataset path configured for split '" + split + "'");
  }
  return load_dataset(path);
}

CorpusIndex build_train_index(RunContext& ctx) {
  const auto items = load_split(ctx.config, "train");
  return build_corpus_index(items, ctx.provider.get(),
                            {ctx.config.bm25_k1, ctx.config.bm25_b});
}

std::string alignment_store_path(const RunConfig& config,
                                 const std::string& run_dir) {
  return run_dir + "/alignments." + to_string(config.direction) + ".jsonl";
}

CommandResult stage_result(const StageReport& report,
                           const StageConfig& config, int total) {
  CommandResult result;
  result.summary = report.to_json();
  result.exit_code = report.within_threshold(config.failure_threshold, total)
                         ? kExitOk
                         : kExitStage;
  return result;
}

}  // namespace

RunContext make_context(const RunConfig& config, const std::string& command,
                        bool needs_llm) {
  RunContext ctx;
  ctx.config = config;
  ctx.run_dir = config.output_dir;
  std::filesystem::create_directories(ctx.run_dir);

  const std::string cache_path = config.cache_path.empty()
                                     ? ctx.run_dir + "/cache.jsonl"
                                     : config.cache_path;
  ctx.cache = std::make_shared<ResponseCache>(cache_path);

  RetryPolicy retry{config.retry_max_attempts, config.retry_base_delay_ms,
                    config.retry_max_delay_ms};

  Endpoint teacher;
  teacher.transport =
      make_transport(config, config.teacher_endpoint, 1, needs_llm);
  teacher.model = config.mock ? "mock-teacher" : config.teacher_model;
  teacher.retry = retry;
  ctx.teacher = std::make_unique<LlmClient>(teacher, ctx.cache);

  Endpoint scorer;
  scorer.transport =
      make_transport(config, config.scorer_endpoint, 2, needs_llm);
  scorer.model = config.mock ? "mock-scorer" : config.scorer_model;
  scorer.retry = retry;
  ctx.scorer = std::make_unique<LlmClient>(scorer, ctx.cache);

  if (config.embedding_provider == "remote" && !config.mock) {
    ctx.provider = std::make_unique<RemoteEmbeddingProvider>(
        std::make_shared<HttplibTransport>(config.embedding_endpoint,
                                           config.api_key),
        config.embedding_dim);
  } else {
    ctx.provider =
        std::make_unique<FingerprintEmbeddingProvider>(config.embedding_dim);
  }

  ctx.store =
      std::make_unique<AlignmentStore>(alignment_store_path(config, ctx.run_dir));
  ctx.templates = config.templates_dir.empty()
                      ? TemplateSet::embedded()
                      : TemplateSet::load_dir(config.templates_dir);

  write_manifest(config, ctx.run_dir, command);
  return ctx;
}

CommandResult cmd_index(RunContext& ctx) {
  const auto items = load_split(ctx.config, "train");
  const CorpusIndex corpus = build_corpus_index(
      items, ctx.provider.get(), {ctx.config.bm25_k1, ctx.config.bm25_b});

  // Persist the embedding side for audit; BM25 is rebuilt on demand.
  json embeddings = json::object();
  for (const auto& [id, vec] : corpus.index.embeddings) {
    embeddings[id] = vec;
  }
  const json artifact = {
      {"doc_count", corpus.index.doc_count()},
      {"avg_doc_length", corpus.index.avg_doc_length},
      {"embedding_dim", corpus.index.embedding_dim},
      {"params",
       {{"k1", corpus.index.params.k1}, {"b", corpus.index.params.b}}},
      {"embeddings", embeddings},
  };
  std::ofstream out(ctx.run_dir + "/index.json");
  out << artifact.dump() << '\n';

  CommandResult result;
  result.summary = {{"documents", corpus.index.doc_count()},
                    {"embedding_dim", corpus.index.embedding_dim},
                    {"path", ctx.run_dir + "/index.json"}};
  return result;
}

CommandResult cmd_stage(RunContext& ctx, Stage stage) {
  const auto items = load_split(ctx.config, "train");
  const StageConfig config = stage_config(ctx.config);
  AlignmentPipeline pipeline = ctx.make_pipeline();

  StageReport report;
  switch (stage) {
    case Stage::Extract:
      report = pipeline.run_extract(items, config);
      break;
    case Stage::Reflect: {
      const CorpusIndex corpus = build_train_index(ctx);
      report = pipeline.run_reflect(items, corpus, ctx.provider.get(), config);
      break;
    }
    case Stage::Select:
      report = pipeline.run_select(items, config);
      break;
  }

  std::ofstream out(ctx.run_dir + "/report." + to_string(stage) + ".json");
  out << report.to_json().dump(2) << '\n';
  return stage_result(report, config, static_cast<int>(items.size()));
}

CommandResult cmd_emit(RunContext& ctx, Paradigm paradigm,
                       const std::string& split,
                       const std::string& output_override) {
  const auto dataset = load_split(ctx.config, split);
  const CorpusIndex corpus = build_train_index(ctx);

  const std::string output =
      output_override.empty()
          ? ctx.run_dir + "/" + std::string(to_string(paradigm)) + "." +
                to_string(ctx.config.direction) + "." + split + ".jsonl"
          : output_override;

  const EmitStats stats =
      emit(paradigm, dataset, *ctx.store, corpus, ctx.provider.get(),
           ctx.config.n_examples, output, ctx.templates, ctx.config.direction);

  const ValidationReport validation = validate_file(output, paradigm);

  CommandResult result;
  result.summary = {{"path", stats.path},
                    {"lines", stats.lines},
                    {"overflow", stats.overflow},
                    {"validated_lines", validation.lines}};
  return result;
}

CommandResult cmd_evaluate(RunContext& ctx, const std::string& predictions,
                           const std::string& references) {
  std::map<std::string, std::string> preds;
  std::map<std::string, std::string> refs;
  for (const json& record : read_jsonl(predictions)) {
    preds[record.at("id").is_string()
              ? record.at("id").get<std::string>()
              : std::to_string(record.at("id").get<std::int64_t>())] =
        record.at("output").get<std::string>();
  }
  for (const json& record : read_jsonl(references)) {
    refs[record.at("id").is_string()
             ? record.at("id").get<std::string>()
             : std::to_string(record.at("id").get<std::int64_t>())] =
        record.at("target").get<std::string>();
  }

  std::vector<std::string> missing_predictions;
  std::vector<std::string> missing_references;
  for (const auto& [id, text] : refs) {
    if (!preds.contains(id)) missing_predictions.push_back(id);
  }
  for (const auto& [id, text] : preds) {
    if (!refs.contains(id)) missing_references.push_back(id);
  }
  if (!missing_predictions.empty() || !missing_references.empty()) {
    std::string what = "prediction/reference id sets differ;";
    if (!missing_predictions.empty()) {
      what += " missing predictions for:";
      for (const auto& id : missing_predictions) what += " " + id;
      what += ";";
    }
    if (!missing_references.empty()) {
      what += " missing references for:";
      for (const auto& id : missing_references) what += " " + id;
    }
    throw LengthMismatch(what);
  }

  std::vector<std::string> ref_texts;
  std::vector<std::string> hyp_texts;
  for (const auto& [id, target] : refs) {
    ref_texts.push_back(target);
    hyp_texts.push_back(preds.at(id));
  }

  const EvalReport report = ctx.config.direction == TaskDirection::Mol2Cap
                                ? evaluate_mol2cap(ref_texts, hyp_texts)
                                : evaluate_cap2mol(ref_texts, hyp_texts);

  std::ofstream out(ctx.run_dir + "/eval." + to_string(ctx.config.direction) +
                    ".json");
  out << report.to_json().dump(2) << '\n';

  CommandResult result;
  result.summary = report.to_json();
  result.summary["table"] = report.to_table();
  return result;
}

CommandResult cmd_probe(RunContext& ctx, ProbeKind kind,
                        const std::string& input_path,
                        const std::string& output_path) {
  const auto testset = load_dataset(input_path);
  const auto transformed = probe_testset(testset, kind, ctx.config.seed);

  std::vector<json> records;
  records.reserve(transformed.size());
  for (const DatasetItem& item : transformed) {
    records.push_back(
        {{"id", item.id}, {"smiles", item.smiles}, {"caption", item.caption}});
  }
  const std::string output =
      output_path.empty()
          ? ctx.run_dir + "/probe." + to_string(kind) + ".jsonl"
          : output_path;
  write_jsonl(output, records);

  CommandResult result;
  result.summary = {{"path", output},
                    {"items", transformed.size()},
                    {"kind", to_string(kind)}};
  return result;
}

CommandResult cmd_pipeline(RunContext& ctx) {
  const auto items = load_split(ctx.config, "train");
  const StageConfig config = stage_config(ctx.config);
  AlignmentPipeline pipeline = ctx.make_pipeline();

  json summary = json::object();

  const CommandResult index_result = cmd_index(ctx);
  summary["index"] = index_result.summary;

  const StageReport extract = pipeline.run_extract(items, config);
  summary["extract"] = extract.to_json();
  if (!extract.within_threshold(config.failure_threshold,
                                static_cast<int>(items.size()))) {
    return {kExitStage, summary};
  }

  const CorpusIndex corpus = build_train_index(ctx);
  const StageReport reflect =
      pipeline.run_reflect(items, corpus, ctx.provider.get(), config);
  summary["reflect"] = reflect.to_json();
  if (!reflect.within_threshold(config.failure_threshold,
                                static_cast<int>(items.size()))) {
    return {kExitStage, summary};
  }

  const StageReport select = pipeline.run_select(items, config);
  summary["select"] = select.to_json();
  if (!select.within_threshold(config.failure_threshold,
                               static_cast<int>(items.size()))) {
    return {kExitStage, summary};
  }

  for (Paradigm paradigm : {Paradigm::NaiveSft, Paradigm::Instruction,
                            Paradigm::Icmt, Paradigm::CotIcmt}) {
    const CommandResult emitted = cmd_emit(ctx, paradigm, "train", "");
    summary[std::string("emit_") + to_string(paradigm)] = emitted.summary;
  }

  return {kExitOk, summary};
}

}  // namespace molforge::runner
