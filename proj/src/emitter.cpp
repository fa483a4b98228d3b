//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/emitter.hpp"

#include <algorithm>
#include <fstream>

#include "molforge/text.hpp"

namespace molforge {

using nlohmann::json;

const char* to_string(Paradigm paradigm) {
  switch (paradigm) {
    case Paradigm::NaiveSft: return "naive_sft";
    case Paradigm::Instruction: return "instruction";
    case Paradigm::Icmt: return "icmt";
    case Paradigm::CotIcmt: return "cot_icmt";
  }
  return "naive_sft";
}

Paradigm paradigm_from_string(const std::string& text) {
  if (text == "naive_sft") return Paradigm::NaiveSft;
  if (text == "instruction") return Paradigm::Instruction;
  if (text == "icmt") return Paradigm::Icmt;
  if (text == "cot_icmt") return Paradigm::CotIcmt;
  throw std::invalid_argument("unknown paradigm: " + text);
}

json TrainingExample::to_json(bool flatten) const {
  json metadata = {{"item_id", item_id},
                   {"neighbor_ids", neighbor_ids},
                   {"alignment_provenance", alignment_provenance}};
  if (flatten) {
    std::string text;
    for (const ChatMessage& message : messages) {
      text += "<|";
      text += to_string(message.role);
      text += "|>\n";
      text += message.content;
      text += "\n";
    }
    return {{"paradigm", to_string(paradigm)},
            {"direction", to_string(direction)},
            {"text", text},
            {"metadata", metadata}};
  }
  json messages_json = json::array();
  for (const ChatMessage& message : messages) {
    messages_json.push_back(
        {{"role", to_string(message.role)}, {"content", message.content}});
  }
  return {{"paradigm", to_string(paradigm)},
          {"direction", to_string(direction)},
          {"messages", messages_json},
          {"metadata", metadata}};
}

namespace {

std::string paradigm_template_name(Paradigm paradigm,
                                   TaskDirection direction) {
  std::string stem;
  switch (paradigm) {
    case Paradigm::Instruction: stem = "instruction"; break;
    case Paradigm::Icmt: stem = "icmt"; break;
    case Paradigm::CotIcmt: stem = "cot_icmt"; break;
    case Paradigm::NaiveSft: break;
  }
  return stem + "_" + to_string(direction);
}

}  // namespace

TrainingExample build_training_example(
    Paradigm paradigm, TaskDirection direction, const TemplateSet& templates,
    const DatasetItem& item, const std::string& alignment,
    const std::string& alignment_provenance,
    const std::vector<ContextExample>& context) {
  TrainingExample example;
  example.paradigm = paradigm;
  example.direction = direction;
  example.item_id = item.id;
  example.alignment_provenance = alignment_provenance;
  for (const ContextExample& neighbor : context) {
    example.neighbor_ids.push_back(neighbor.neighbor_id);
  }

  const std::string& input = item.input(direction);
  const std::string& target = item.target(direction);

  if (paradigm == Paradigm::NaiveSft) {
    example.messages = {{Role::User, input}, {Role::Assistant, target}};
    return example;
  }

  const PromptTemplate& tmpl =
      templates.get(paradigm_template_name(paradigm, direction));
  std::map<std::string, std::string> values = {{"input", input}};
  if (paradigm == Paradigm::Instruction || paradigm == Paradigm::CotIcmt) {
    values["alignment"] = alignment;
  }
  if (paradigm == Paradigm::Icmt || paradigm == Paradigm::CotIcmt) {
    values["examples"] = render_examples(tmpl, context);
  }
  example.messages = {{Role::System, tmpl.system},
                      {Role::User, render_placeholders(tmpl.user, values)},
                      {Role::Assistant, target}};
  return example;
}

EmitStats emit(Paradigm paradigm, const std::vector<DatasetItem>& dataset,
               const AlignmentStore& store, const CorpusIndex& corpus,
               EmbeddingProvider* provider, int n_examples,
               const std::string& output_path, const TemplateSet& templates,
               TaskDirection direction, bool flatten, int token_cutoff) {
  std::vector<DatasetItem> ordered = dataset;
  std::sort(ordered.begin(), ordered.end(),
            [](const DatasetItem& a, const DatasetItem& b) {
              return a.id < b.id;
            });

  const bool needs_alignment =
      paradigm == Paradigm::Instruction || paradigm == Paradigm::CotIcmt;
  const bool needs_context =
      paradigm == Paradigm::Icmt || paradigm == Paradigm::CotIcmt;
  const std::map<std::string, std::string> selected = store.selected_texts();

  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot write " + output_path);

  EmitStats stats;
  stats.path = output_path;
  for (const DatasetItem& item : ordered) {
    std::string alignment;
    std::string provenance;
    if (needs_alignment) {
      const auto record = store.get(item.id);
      if (!record || !record->selected) throw MissingAlignment(item.id);
      alignment = record->selected_text;
      provenance = *record->selected;
    }

    std::vector<ContextExample> context;
    if (needs_context) {
      // CoT chains need every neighbor's selected alignment; plain ICMT
      // only needs the neighbor pairs.
      try {
        context = retrieve_context(corpus, provider, item, direction,
                                   n_examples, selected,
                                   paradigm == Paradigm::CotIcmt);
      } catch (const std::runtime_error& e) {
        if (std::string(e.what()).find("no stored alignment") !=
            std::string::npos) {
          throw MissingAlignment(item.id);
        }
        throw;
      }
    }

    const TrainingExample example = build_training_example(
        paradigm, direction, templates, item, alignment, provenance, context);

    std::size_t token_estimate = 0;
    for (const ChatMessage& message : example.messages) {
      token_estimate += estimate_tokens(message.content);
    }
    if (token_estimate > static_cast<std::size_t>(token_cutoff)) {
      ++stats.overflow;
    }

    out << example.to_json(flatten).dump() << '\n';
    ++stats.lines;
  }
  return stats;
}

json ValidationReport::to_json() const {
  return {{"lines", lines}, {"overflow_lines", overflow_lines}};
}

ValidationReport validate_file(const std::string& path, Paradigm paradigm,
                               int token_cutoff) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  ValidationReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      throw SchemaViolation(line_no, "invalid JSON");
    }
    if (record.value("paradigm", "") != to_string(paradigm)) {
      throw SchemaViolation(line_no, "paradigm mismatch");
    }
    if (!record.contains("messages") || !record["messages"].is_array() ||
        record["messages"].empty()) {
      throw SchemaViolation(line_no, "missing messages");
    }

    int assistants = 0;
    std::size_t token_estimate = 0;
    const auto& messages = record["messages"];
    for (std::size_t i = 0; i < messages.size(); ++i) {
      const json& message = messages[i];
      if (!message.contains("role") || !message.contains("content")) {
        throw SchemaViolation(line_no, "message lacks role/content");
      }
      const std::string role = message["role"];
      if (role != "system" && role != "user" && role != "assistant") {
        throw SchemaViolation(line_no, "unknown role " + role);
      }
      if (role == "assistant") {
        ++assistants;
        if (i + 1 != messages.size()) {
          throw SchemaViolation(line_no, "assistant message is not last");
        }
      }
      token_estimate +=
          estimate_tokens(message["content"].get<std::string>());
    }
    if (assistants != 1) {
      throw SchemaViolation(line_no,
                            "expected exactly one assistant message, found " +
                                std::to_string(assistants));
    }

    const std::size_t expected_messages =
        paradigm == Paradigm::NaiveSft ? 2 : 3;
    if (messages.size() != expected_messages) {
      throw SchemaViolation(line_no,
                            "expected " + std::to_string(expected_messages) +
                                " messages, found " +
                                std::to_string(messages.size()));
    }

    if (token_estimate > static_cast<std::size_t>(token_cutoff)) {
      report.overflow_lines.push_back(line_no);
    }
    ++report.lines;
  }
  return report;
}

}  // namespace molforge
