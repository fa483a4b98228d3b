//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_PROMPTS_HPP
#define MOLFORGE_PROMPTS_HPP

#include <map>
#include <string>
#include <vector>

#include "molforge/gateway.hpp"
#include "molforge/retrieval.hpp"

namespace molforge {

// One template file: a system section, a user section with {input},
// {alignment}, {examples} placeholders, and an optional per-example block
// with {example_input}, {example_alignment}, {example_target}.
struct PromptTemplate {
  std::string name;
  std::string system;
  std::string user;
  std::string example;
};

PromptTemplate parse_template(const std::string& name,
                              const std::string& text);

// Named template collection. `embedded()` is the set checked into
// data/templates; `load_dir` overrides it from *.tmpl files.
class TemplateSet {
 public:
  static const TemplateSet& embedded();
  static TemplateSet load_dir(const std::string& dir);

  const PromptTemplate& get(const std::string& name) const;
  bool has(const std::string& name) const;
  std::vector<std::string> names() const;

  void put(PromptTemplate tmpl);

 private:
  std::map<std::string, PromptTemplate> templates_;
};

// Raw embedded file contents keyed by template name (sync-checked against
// data/templates in the tests).
const std::map<std::string, std::string>& embedded_template_texts();

// {placeholder} substitution; unknown placeholders are left intact.
std::string render_placeholders(
    const std::string& text,
    const std::map<std::string, std::string>& values);

// Per-example blocks joined by blank lines, in retrieval-score order.
std::string render_examples(const PromptTemplate& tmpl,
                            const std::vector<ContextExample>& context);

ChatPrompt render_zero_shot(const TemplateSet& templates,
                            TaskDirection direction, const std::string& input,
                            const GenerationParams& params);

ChatPrompt render_reflection(const TemplateSet& templates,
                             TaskDirection direction, const std::string& input,
                             const std::vector<ContextExample>& context,
                             const GenerationParams& params);

// Condition text used when scoring an alignment against its input.
std::string scoring_condition(const std::string& input);

}  // namespace molforge

#endif  // MOLFORGE_PROMPTS_HPP
