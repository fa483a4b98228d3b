//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace molforge {

namespace {

std::string trim(const std::string& text) {
  const std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const std::size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

PromptTemplate parse_template(const std::string& name,
                              const std::string& text) {
  PromptTemplate tmpl;
  tmpl.name = name;

  std::istringstream in(text);
  std::string line;
  std::string section;
  std::map<std::string, std::string> sections;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#' && section.empty()) continue;
    if (line == "[system]" || line == "[user]" || line == "[example]") {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section.empty()) continue;
    sections[section] += line;
    sections[section] += '\n';
  }
  tmpl.system = trim(sections["system"]);
  tmpl.user = trim(sections["user"]);
  tmpl.example = trim(sections["example"]);
  if (tmpl.system.empty() || tmpl.user.empty()) {
    throw std::invalid_argument("template '" + name +
                                "' needs [system] and [user] sections");
  }
  return tmpl;
}

const TemplateSet& TemplateSet::embedded() {
  static const TemplateSet set = [] {
    TemplateSet out;
    for (const auto& [name, text] : embedded_template_texts()) {
      out.put(parse_template(name, text));
    }
    return out;
  }();
  return set;
}

TemplateSet TemplateSet::load_dir(const std::string& dir) {
  TemplateSet set;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".tmpl") continue;
    std::ifstream in(entry.path());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    set.put(parse_template(entry.path().stem().string(), buffer.str()));
  }
  if (set.names().empty()) {
    throw std::runtime_error("no *.tmpl files found in " + dir);
  }
  return set;
}

const PromptTemplate& TemplateSet::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) {
    throw std::out_of_range("no template named '" + name + "'");
  }
  return it->second;
}

bool TemplateSet::has(const std::string& name) const {
  return templates_.contains(name);
}

std::vector<std::string> TemplateSet::names() const {
  std::vector<std::string> out;
  for (const auto& [name, tmpl] : templates_) out.push_back(name);
  return out;
}

void TemplateSet::put(PromptTemplate tmpl) {
  templates_[tmpl.name] = std::move(tmpl);
}

std::string render_placeholders(
    const std::string& text,
    const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out.append(text.substr(pos));
      break;
    }
    const std::size_t close = text.find('}', open);
    if (close == std::string::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::string key = text.substr(open + 1, close - open - 1);
    auto it = values.find(key);
    if (it != values.end()) {
      out.append(it->second);
    } else {
      out.append(text.substr(open, close - open + 1));
    }
    pos = close + 1;
  }
  return out;
}

std::string render_examples(const PromptTemplate& tmpl,
                            const std::vector<ContextExample>& context) {
  if (tmpl.example.empty()) {
    throw std::invalid_argument("template '" + tmpl.name +
                                "' has no [example] section");
  }
  std::string out;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += render_placeholders(
        tmpl.example, {{"example_input", context[i].neighbor_input},
                       {"example_alignment", context[i].neighbor_alignment},
                       {"example_target", context[i].neighbor_target}});
  }
  return out;
}

namespace {

std::string template_name(const char* stem, TaskDirection direction) {
  return std::string(stem) + "_" + to_string(direction);
}

}  // namespace

ChatPrompt render_zero_shot(const TemplateSet& templates,
                            TaskDirection direction, const std::string& input,
                            const GenerationParams& params) {
  const PromptTemplate& tmpl =
      templates.get(template_name("extract", direction));
  ChatPrompt prompt;
  prompt.params = params;
  prompt.messages.push_back({Role::System, tmpl.system});
  prompt.messages.push_back(
      {Role::User, render_placeholders(tmpl.user, {{"input", input}})});
  prompt.validate();
  return prompt;
}

ChatPrompt render_reflection(const TemplateSet& templates,
                             TaskDirection direction, const std::string& input,
                             const std::vector<ContextExample>& context,
                             const GenerationParams& params) {
  const PromptTemplate& tmpl =
      templates.get(template_name("reflect", direction));
  ChatPrompt prompt;
  prompt.params = params;
  prompt.messages.push_back({Role::System, tmpl.system});
  prompt.messages.push_back(
      {Role::User,
       render_placeholders(tmpl.user,
                           {{"input", input},
                            {"examples", render_examples(tmpl, context)}})});
  prompt.validate();
  return prompt;
}

std::string scoring_condition(const std::string& input) {
  return input + "\n";
}

}  // namespace molforge
