//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_TEXT_HPP
#define MOLFORGE_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace molforge {

// 64-bit FNV-1a; the one hash used for fingerprints, cache keys, and
// file digests so results stay identical across platforms.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Lowercased tokens over alphanumeric runs. Hyphens and commas inside a
// run are kept so chemistry names like "1,2-diol" or "beta-D-glucose"
// stay whole; leading/trailing punctuation is trimmed.
std::vector<std::string> tokenize_caption(std::string_view text);

// Characters of a string as single-character tokens (SMILES-level n-grams).
std::vector<std::string> character_tokens(std::string_view text);

// Light English suffix stripper (plural and -ed/-ing forms). Not a full
// Porter stemmer; documented in the README.
std::string stem(std::string_view word);

// Whitespace+punctuation proxy for LLM token counts (within roughly 15%
// of common BPE vocabularies on this domain's text).
std::size_t estimate_tokens(std::string_view text);

}  // namespace molforge

#endif  // MOLFORGE_TEXT_HPP
