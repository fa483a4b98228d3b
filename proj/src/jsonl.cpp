//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "molforge/text.hpp"

namespace molforge {

using nlohmann::json;

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<json> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": invalid JSON");
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_jsonl(const std::string& path, const std::vector<json>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const json& record : records) {
    out << record.dump() << '\n';
  }
}

namespace {

std::string id_to_string(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) {
    return std::to_string(value.get<std::int64_t>());
  }
  throw std::runtime_error("item id must be a string or integer, got " +
                           value.dump());
}

}  // namespace

std::vector<DatasetItem> load_dataset(const std::string& path) {
  std::vector<DatasetItem> items;
  for (const json& record : read_jsonl(path)) {
    if (!record.contains("id") || !record.contains("smiles") ||
        !record.contains("caption")) {
      throw std::runtime_error(path + ": dataset rows need id/smiles/caption");
    }
    DatasetItem item;
    item.id = id_to_string(record["id"]);
    item.smiles = record["smiles"].get<std::string>();
    item.caption = record["caption"].get<std::string>();
    items.push_back(std::move(item));
  }
  return items;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

}  // namespace molforge
