//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_JSONL_HPP
#define MOLFORGE_JSONL_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "molforge/retrieval.hpp"

namespace molforge {

// One parsed JSON value per non-empty line; throws std::runtime_error with
// the line number on bad input.
std::vector<nlohmann::json> read_jsonl(const std::string& path);

void write_jsonl(const std::string& path,
                 const std::vector<nlohmann::json>& records);

// Dataset rows {id, smiles, caption}; numeric ids are coerced to strings.
std::vector<DatasetItem> load_dataset(const std::string& path);

// FNV-1a digest of a file's bytes, for run manifests.
std::string file_digest(const std::string& path);

}  // namespace molforge

#endif  // MOLFORGE_JSONL_HPP
