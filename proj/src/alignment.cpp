//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/alignment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

namespace molforge {

using nlohmann::json;

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::Extract: return "extract";
    case Stage::Reflect: return "reflect";
    case Stage::Select: return "select";
  }
  return "extract";
}

Stage stage_from_string(const std::string& text) {
  if (text == "extract") return Stage::Extract;
  if (text == "reflect") return Stage::Reflect;
  if (text == "select") return Stage::Select;
  throw std::invalid_argument("unknown stage: " + text);
}

bool AlignmentRecord::extract_done(const std::string& teacher) const {
  return !k0.empty() && teacher_model == teacher;
}

bool AlignmentRecord::reflect_done(const std::string& teacher) const {
  return k1.has_value() && teacher_model == teacher;
}

bool AlignmentRecord::select_done(const std::string& scorer) const {
  return selected.has_value() && scorer_model == scorer;
}

void AlignmentRecord::validate() const {
  if (selected) {
    const std::string& expected = *selected == "K0" ? k0 : k1.value_or("");
    if (selected_text != expected) {
      throw std::logic_error("record " + id +
                             ": selected_text does not match branch " +
                             *selected);
    }
    if (ppl0 && ppl1) {
      const bool k0_wins = *ppl0 <= *ppl1;  // tie goes to K0
      if ((*selected == "K0") != k0_wins) {
        throw std::logic_error("record " + id +
                               ": selection does not match min perplexity");
      }
    }
  }
  if (k1 && selected && !(ppl0 && ppl1)) {
    // K1 present means both branches were scored before finalizing, except
    // for the recorded-fallback path which carries a warning.
    if (warnings.empty()) {
      throw std::logic_error("record " + id +
                             ": finalized with K1 but missing perplexities");
    }
  }
}

json AlignmentRecord::to_json() const {
  json record = {
      {"id", id},
      {"direction", to_string(direction)},
      {"input", input},
      {"target", target},
      {"k0", k0},
      {"teacher_model", teacher_model},
      {"scorer_model", scorer_model},
      {"stage_timestamps", stage_timestamps},
      {"warnings", warnings},
  };
  if (k1) record["k1"] = *k1;
  if (ppl0) record["ppl0"] = *ppl0;
  if (ppl1) record["ppl1"] = *ppl1;
  if (selected) {
    record["selected"] = *selected;
    record["selected_text"] = selected_text;
  }
  return record;
}

AlignmentRecord AlignmentRecord::from_json(const json& record) {
  AlignmentRecord out;
  out.id = record.at("id").get<std::string>();
  out.direction = direction_from_string(record.at("direction"));
  out.input = record.value("input", "");
  out.target = record.value("target", "");
  out.k0 = record.value("k0", "");
  out.teacher_model = record.value("teacher_model", "");
  out.scorer_model = record.value("scorer_model", "");
  if (record.contains("k1")) out.k1 = record["k1"].get<std::string>();
  if (record.contains("ppl0")) out.ppl0 = record["ppl0"].get<double>();
  if (record.contains("ppl1")) out.ppl1 = record["ppl1"].get<double>();
  if (record.contains("selected")) {
    out.selected = record["selected"].get<std::string>();
    out.selected_text = record.value("selected_text", "");
  }
  if (record.contains("stage_timestamps")) {
    out.stage_timestamps =
        record["stage_timestamps"]
            .get<std::map<std::string, std::int64_t>>();
  }
  if (record.contains("warnings")) {
    out.warnings = record["warnings"].get<std::vector<std::string>>();
  }
  return out;
}

// --- store -----------------------------------------------------------------

AlignmentStore::AlignmentStore(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) continue;
    AlignmentRecord parsed = AlignmentRecord::from_json(record);
    records_[parsed.id] = std::move(parsed);  // last line wins
  }
}

std::optional<AlignmentRecord> AlignmentStore::get(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<AlignmentRecord> AlignmentStore::all() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<AlignmentRecord> out;
  out.reserve(records_.size());
  for (const auto& [id, record] : records_) out.push_back(record);
  return out;
}

void AlignmentStore::upsert(const AlignmentRecord& record) {
  std::lock_guard<std::mutex> lock(mutex_);
  records_[record.id] = record;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << record.to_json().dump() << '\n';
}

std::size_t AlignmentStore::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_.size();
}

std::map<std::string, std::string> AlignmentStore::k0_texts() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::map<std::string, std::string> out;
  for (const auto& [id, record] : records_) {
    if (!record.k0.empty()) out[id] = record.k0;
  }
  return out;
}

std::map<std::string, std::string> AlignmentStore::selected_texts() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::map<std::string, std::string> out;
  for (const auto& [id, record] : records_) {
    if (record.selected) out[id] = record.selected_text;
  }
  return out;
}

json StageReport::to_json() const {
  json failures_json = json::array();
  for (const auto& [id, error] : failures) {
    failures_json.push_back({{"id", id}, {"error", error}});
  }
  return {{"stage", to_string(stage)},
          {"processed", processed},
          {"skipped", skipped},
          {"failed", failed()},
          {"failures", failures_json}};
}

// --- pipeline ---------------------------------------------------------------

AlignmentPipeline::AlignmentPipeline(const TemplateSet& templates,
                                     LlmClient& teacher, LlmClient& scorer,
                                     AlignmentStore& store)
    : templates_(templates), teacher_(teacher), scorer_(scorer),
      store_(store) {}

std::int64_t AlignmentPipeline::now_ms(bool deterministic) const {
  if (deterministic) return 0;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
}

namespace {

std::string require_nonempty(std::string text, const std::string& id) {
  const std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    throw EmptyTeacherResponse("teacher returned a whitespace-only alignment for " + id);
  }
  const std::size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

std::string AlignmentPipeline::extract_zero_shot(
    const DatasetItem& item, TaskDirection direction,
    const GenerationParams& params) {
  const ChatPrompt prompt =
      render_zero_shot(templates_, direction, item.input(direction), params);
  return require_nonempty(teacher_.chat_complete(prompt), item.id);
}

std::string AlignmentPipeline::reflect_in_context(
    const DatasetItem& item, TaskDirection direction,
    const std::vector<ContextExample>& context,
    const GenerationParams& params) {
  for (const ContextExample& example : context) {
    if (example.neighbor_id == item.id) {
      throw std::invalid_argument(
          "context for " + item.id + " contains the item itself");
    }
  }
  const ChatPrompt prompt = render_reflection(
      templates_, direction, item.input(direction), context, params);
  return require_nonempty(teacher_.chat_complete(prompt), item.id);
}

AlignmentRecord AlignmentPipeline::select_alignment(
    AlignmentRecord record, bool fallback_on_k1_failure) {
  if (record.k0.empty() || !record.k1) {
    throw StageOrderError("record " + record.id +
                          " needs K0 and K1 before selection");
  }
  const std::string condition = scoring_condition(record.input);
  record.ppl0 =
      perplexity(scorer_.score_continuation(condition, record.k0));
  try {
    record.ppl1 =
        perplexity(scorer_.score_continuation(condition, *record.k1));
  } catch (const std::exception& e) {
    if (!fallback_on_k1_failure) throw;
    record.ppl1.reset();
    record.selected = "K0";
    record.selected_text = record.k0;
    record.warnings.push_back(std::string("k1 scoring failed, fell back to K0: ") +
                              e.what());
    record.scorer_model = scorer_.model();
    return record;
  }

  record.selected = *record.ppl0 <= *record.ppl1 ? "K0" : "K1";
  record.selected_text = *record.selected == "K0" ? record.k0 : *record.k1;
  record.scorer_model = scorer_.model();
  record.validate();
  return record;
}

StageReport AlignmentPipeline::run_extract(
    const std::vector<DatasetItem>& items, const StageConfig& config) {
  // LLM calls for a chunk run concurrently; commits happen afterwards in
  // item order so store files are byte-stable regardless of thread timing.
  std::mutex commit_mutex;
  std::vector<std::optional<AlignmentRecord>> pending(items.size());

  StageReport report;
  report.stage = Stage::Extract;

  std::size_t next = 0;
  const auto width = static_cast<std::size_t>(std::max(1, config.max_inflight));
  while (next < items.size()) {
    const std::size_t chunk_end = std::min(items.size(), next + width);
    std::vector<std::future<bool>> futures;  // true = processed, false = skipped
    for (std::size_t i = next; i < chunk_end; ++i) {
      futures.push_back(std::async(std::launch::async, [&, i]() -> bool {
        const DatasetItem& item = items[i];
        const auto existing = store_.get(item.id);
        if (existing && existing->extract_done(teacher_.model()) &&
            existing->direction == config.direction) {
          return false;
        }
        AlignmentRecord record;
        record.id = item.id;
        record.direction = config.direction;
        record.input = item.input(config.direction);
        record.target = item.target(config.direction);
        record.k0 =
            extract_zero_shot(item, config.direction, config.generation);
        record.teacher_model = teacher_.model();
        record.stage_timestamps["extract"] =
            now_ms(config.deterministic_clock);
        std::lock_guard<std::mutex> lock(commit_mutex);
        pending[i] = std::move(record);
        return true;
      }));
    }
    for (std::size_t i = next; i < chunk_end; ++i) {
      try {
        futures[i - next].get() ? ++report.processed : ++report.skipped;
      } catch (const std::exception& e) {
        report.failures.emplace_back(items[i].id, e.what());
      }
    }
    // Commit in item order for byte-stable stores.
    for (std::size_t i = next; i < chunk_end; ++i) {
      if (pending[i]) store_.upsert(*pending[i]);
    }
    next = chunk_end;
  }
  return report;
}

StageReport AlignmentPipeline::run_reflect(
    const std::vector<DatasetItem>& items, const CorpusIndex& corpus,
    EmbeddingProvider* provider, const StageConfig& config) {
  const std::map<std::string, std::string> k0s = store_.k0_texts();

  StageReport report;
  report.stage = Stage::Reflect;

  std::vector<std::optional<AlignmentRecord>> pending(items.size());
  std::mutex commit_mutex;
  std::size_t next = 0;
  const auto width = static_cast<std::size_t>(std::max(1, config.max_inflight));
  while (next < items.size()) {
    const std::size_t chunk_end = std::min(items.size(), next + width);
    std::vector<std::future<bool>> futures;
    for (std::size_t i = next; i < chunk_end; ++i) {
      futures.push_back(std::async(std::launch::async, [&, i]() -> bool {
        const DatasetItem& item = items[i];
        auto existing = store_.get(item.id);
        if (!existing || !existing->extract_done(teacher_.model())) {
          throw StageOrderError("item " + item.id +
                                " has no zero-shot alignment yet");
        }
        if (existing->reflect_done(teacher_.model())) return false;

        // Neighbors carry their own zero-shot alignments into the prompt.
        const auto context = retrieve_context(corpus, provider, item,
                                              config.direction,
                                              config.n_examples, k0s,
                                              /*require_alignments=*/true);
        AlignmentRecord record = *existing;
        record.k1 = reflect_in_context(item, config.direction, context,
                                       config.generation);
        record.stage_timestamps["reflect"] =
            now_ms(config.deterministic_clock);
        std::lock_guard<std::mutex> lock(commit_mutex);
        pending[i] = std::move(record);
        return true;
      }));
    }
    for (std::size_t i = next; i < chunk_end; ++i) {
      try {
        futures[i - next].get() ? ++report.processed : ++report.skipped;
      } catch (const std::exception& e) {
        report.failures.emplace_back(items[i].id, e.what());
      }
    }
    for (std::size_t i = next; i < chunk_end; ++i) {
      if (pending[i]) store_.upsert(*pending[i]);
    }
    next = chunk_end;
  }
  return report;
}

StageReport AlignmentPipeline::run_select(
    const std::vector<DatasetItem>& items, const StageConfig& config) {
  StageReport report;
  report.stage = Stage::Select;

  std::vector<std::optional<AlignmentRecord>> pending(items.size());
  std::mutex commit_mutex;
  std::size_t next = 0;
  const auto width = static_cast<std::size_t>(std::max(1, config.max_inflight));
  while (next < items.size()) {
    const std::size_t chunk_end = std::min(items.size(), next + width);
    std::vector<std::future<bool>> futures;
    for (std::size_t i = next; i < chunk_end; ++i) {
      futures.push_back(std::async(std::launch::async, [&, i]() -> bool {
        const DatasetItem& item = items[i];
        auto existing = store_.get(item.id);
        if (!existing || existing->k0.empty()) {
          throw StageOrderError("item " + item.id +
                                " has no zero-shot alignment yet");
        }
        if (existing->select_done(scorer_.model())) return false;
        if (!existing->k1) {
          if (!config.select_fallback_k0) {
            throw StageOrderError("item " + item.id +
                                  " has no reflected alignment yet");
          }
          AlignmentRecord record = *existing;
          record.selected = "K0";
          record.selected_text = record.k0;
          record.scorer_model = scorer_.model();
          record.warnings.push_back("selected K0 without K1 (fallback mode)");
          record.stage_timestamps["select"] =
              now_ms(config.deterministic_clock);
          std::lock_guard<std::mutex> lock(commit_mutex);
          pending[i] = std::move(record);
          return true;
        }

        AlignmentRecord record = select_alignment(*existing);
        record.stage_timestamps["select"] =
            now_ms(config.deterministic_clock);
        std::lock_guard<std::mutex> lock(commit_mutex);
        pending[i] = std::move(record);
        return true;
      }));
    }
    for (std::size_t i = next; i < chunk_end; ++i) {
      try {
        futures[i - next].get() ? ++report.processed : ++report.skipped;
      } catch (const std::exception& e) {
        report.failures.emplace_back(items[i].id, e.what());
      }
    }
    for (std::size_t i = next; i < chunk_end; ++i) {
      if (pending[i]) store_.upsert(*pending[i]);
    }
    next = chunk_end;
  }
  return report;
}

}  // namespace molforge
