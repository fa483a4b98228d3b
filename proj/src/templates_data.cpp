//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// Embedded copies of data/templates/*.tmpl; a unit test keeps them in
// sync with the files.

#include "molforge/prompts.hpp"

namespace molforge {

const std::map<std::string, std::string>& embedded_template_texts() {
  static const std::map<std::string, std::string> texts = [] {
    std::map<std::string, std::string> texts;
  texts["cot_icmt_cap2mol"] = R"TMPL(# molforge template v1: cot_icmt_cap2mol
[system]
You are an expert chemist. Your task is to generate a molecule, written as a SMILES string, that matches a given description. Reason through the fine-grained alignments before writing the SMILES.
[example]
Molecule description:
{example_input}
Alignments:
{example_alignment}
SMILES:
{example_target}
[user]
Here are examples of similar descriptions, the alignments between their phrases and molecular sub-structures, and their molecules:

{examples}

Now consider this description.

Molecule description:
{input}

Alignments:
{alignment}

Following the reasoning pattern of the examples, write the SMILES string of the molecule. Respond with the SMILES only.
)TMPL";
  texts["cot_icmt_mol2cap"] = R"TMPL(# molforge template v1: cot_icmt_mol2cap
[system]
You are an expert chemist. Your task is to write the caption of a molecule: a precise description of its structure, classes, and properties, based on its SMILES representation. Reason through the fine-grained alignments before writing the caption.
[example]
Molecule SMILES:
{example_input}
Alignments:
{example_alignment}
Caption:
{example_target}
[user]
Here are examples of similar molecules, the alignments between their sub-structures and characteristics, and their captions:

{examples}

Now consider this molecule.

Molecule SMILES:
{input}

Alignments:
{alignment}

Following the reasoning pattern of the examples, write an accurate caption for the molecule.
)TMPL";
  texts["extract_cap2mol"] = R"TMPL(# molforge template v1: extract_cap2mol
[system]
You are an expert chemist. You read molecule descriptions and infer which structural fragments the described characteristics correspond to.
[user]
Below is the description of a molecule:
{input}

Think step by step. Extract the important phrases of the description (named groups, classes, properties, counts) and for each one state the molecular sub-structure pattern it implies. Answer with a concise list of phrase to sub-structure alignments.
)TMPL";
  texts["extract_mol2cap"] = R"TMPL(# molforge template v1: extract_mol2cap
[system]
You are an expert chemist. You analyze molecules from their SMILES representations and explain how structural fragments determine chemical characteristics.
[user]
Below is the SMILES representation of a molecule:
{input}

Think step by step. Extract the important sub-structures of the molecule (functional groups, ring systems, chains, charges, unusual atoms) directly from the SMILES string, and for each one state the characteristic or property it implies for the molecule. Answer with a concise list of sub-structure to characteristic alignments.
)TMPL";
  texts["icmt_cap2mol"] = R"TMPL(# molforge template v1: icmt_cap2mol
[system]
You are an expert chemist. Your task is to generate a molecule, written as a SMILES string, that matches a given description.
[example]
Molecule description:
{example_input}
SMILES:
{example_target}
[user]
Here are examples of similar descriptions and their molecules:

{examples}

Now consider this description.

Molecule description:
{input}

Write the SMILES string of the molecule. Respond with the SMILES only.
)TMPL";
  texts["icmt_mol2cap"] = R"TMPL(# molforge template v1: icmt_mol2cap
[system]
You are an expert chemist. Your task is to write the caption of a molecule: a precise description of its structure, classes, and properties, based on its SMILES representation.
[example]
Molecule SMILES:
{example_input}
Caption:
{example_target}
[user]
Here are examples of similar molecules and their captions:

{examples}

Now consider this molecule.

Molecule SMILES:
{input}

Write an accurate caption for the molecule.
)TMPL";
  texts["instruction_cap2mol"] = R"TMPL(# molforge template v1: instruction_cap2mol
[system]
You are an expert chemist. Your task is to generate a molecule, written as a SMILES string, that matches a given description.
[user]
Molecule description:
{input}

Fine-grained alignments between phrases of this description and molecular sub-structures:
{alignment}

Using the description and the alignments above, write the SMILES string of the molecule. Respond with the SMILES only.
)TMPL";
  texts["instruction_mol2cap"] = R"TMPL(# molforge template v1: instruction_mol2cap
[system]
You are an expert chemist. Your task is to write the caption of a molecule: a precise description of its structure, classes, and properties, based on its SMILES representation.
[user]
Molecule SMILES:
{input}

Fine-grained alignments between sub-structures of this molecule and its characteristics:
{alignment}

Using the SMILES and the alignments above, write an accurate caption for the molecule.
)TMPL";
  texts["reflect_cap2mol"] = R"TMPL(# molforge template v1: reflect_cap2mol
[system]
You are an expert chemist. You read molecule descriptions and infer which structural fragments the described characteristics correspond to.
[example]
Molecule description:
{example_input}
Previously extracted alignments:
{example_alignment}
[user]
Here are descriptions similar to the one you will analyze, together with alignments that were extracted for them earlier:

{examples}

Reflect on those alignments: keep what is chemically sound, drop what is not, and adapt the analysis to the description below.

Molecule description:
{input}

Think step by step and answer with a concise list of phrase to sub-structure alignments for this description.
)TMPL";
  texts["reflect_mol2cap"] = R"TMPL(# molforge template v1: reflect_mol2cap
[system]
You are an expert chemist. You analyze molecules from their SMILES representations and explain how structural fragments determine chemical characteristics.
[example]
Molecule SMILES:
{example_input}
Previously extracted alignments:
{example_alignment}
[user]
Here are molecules similar to the one you will analyze, together with alignments that were extracted for them earlier:

{examples}

Reflect on those alignments: keep what is chemically sound, drop what is not, and adapt the analysis to the molecule below.

Molecule SMILES:
{input}

Think step by step and answer with a concise list of sub-structure to characteristic alignments for this molecule.
)TMPL";
    return texts;
  }();
  return texts;
}

}  // namespace molforge
