//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_FINGERPRINTS_HPP
#define MOLFORGE_FINGERPRINTS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "molforge/smiles.hpp"

namespace molforge {

enum class FingerprintKind : std::uint8_t { Morgan, Path, Keys };

class KindMismatch : public std::invalid_argument {
 public:
  explicit KindMismatch(const std::string& what)
      : std::invalid_argument(what) {}
};

// Fixed-length binary fingerprint. Bits are deterministic functions of the
// graph: isomorphic inputs produce identical bit vectors.
struct Fingerprint {
  FingerprintKind kind = FingerprintKind::Morgan;
  int nbits = 0;
  int param = 0;  // radius (morgan), max path length (path), 0 (keys)
  std::vector<std::uint64_t> blocks;

  void set(int bit);
  bool test(int bit) const;
  int count() const;
  std::vector<int> set_bits() const;

  bool comparable_with(const Fingerprint& other) const {
    return kind == other.kind && nbits == other.nbits && param == other.param;
  }
};

// ECFP-style circular fingerprint: one hashed identifier per atom
// environment at every radius 0..radius, folded modulo nbits.
Fingerprint morgan_fingerprint(const MoleculeGraph& graph, int radius = 2,
                               int nbits = 2048);

// Topological fingerprint over canonical linear bond paths of length
// 1..max_len.
Fingerprint path_fingerprint(const MoleculeGraph& graph, int max_len = 7,
                             int nbits = 2048);

// --- structural keys ----------------------------------------------------

struct StructuralKey {
  int id = 0;
  std::string descriptor;
  std::string label;
};

// Parse the line-oriented key-definition format: `id<TAB>descriptor<TAB>label`,
// '#' comments and blank lines ignored.
std::vector<StructuralKey> parse_structural_keys(const std::string& text);
std::vector<StructuralKey> load_structural_keys(const std::string& path);

// The versioned key set shipped with the repo (data/structural_keys.txt).
const std::vector<StructuralKey>& default_structural_keys();

// Raw text of the embedded default key file.
const std::string& default_structural_keys_text();

// Bit i set iff key i of the set matches the graph.
Fingerprint structural_keys(const MoleculeGraph& graph);
Fingerprint structural_keys(const MoleculeGraph& graph,
                            const std::vector<StructuralKey>& keys);

// True when a single key descriptor matches the graph.
bool key_matches(const MoleculeGraph& graph, const std::string& descriptor);

// |a AND b| / |a OR b|; 1.0 when both are empty. Throws KindMismatch for
// fingerprints with different kind or parameters.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace molforge

#endif  // MOLFORGE_FINGERPRINTS_HPP
