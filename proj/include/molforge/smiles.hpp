//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_SMILES_HPP
#define MOLFORGE_SMILES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace molforge {

enum class BondOrder : std::uint8_t {
  Single = 1,
  Double = 2,
  Triple = 3,
  Aromatic = 4,
};

// Tetrahedral stereo annotation. Parsed and carried along but ignored by
// canonical ranking and never re-emitted.
enum class Chirality : std::uint8_t { None, Anticlockwise, Clockwise };

// E/Z bond-direction annotation ('/' and '\'). Same status as Chirality.
enum class BondDirection : std::uint8_t { None, Up, Down };

struct Atom {
  std::string element;               // element symbol, e.g. "C", "Cl"
  int charge = 0;                    // formal charge in e-units
  int hcount = 0;                    // hydrogens not present as graph atoms
  bool aromatic = false;
  std::optional<int> isotope;
  Chirality chirality = Chirality::None;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  BondDirection direction = BondDirection::None;

  bool aromatic() const { return order == BondOrder::Aromatic; }
};

// Attributed molecular graph. The single internal molecule representation;
// every transform in this module consumes and produces this type.
struct MoleculeGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::string source_text;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }

  // Bond indices incident to each atom, in insertion order.
  std::vector<std::vector<int>> adjacency() const;

  // -1 when the two atoms are not bonded.
  int bond_between(int a, int b) const;
};

// SMILES string in canonical atom order. Canonicalizing again is the
// identity, and isomorphic graphs map to byte-identical text.
struct CanonicalSmiles {
  std::string text;

  friend bool operator==(const CanonicalSmiles&,
                         const CanonicalSmiles&) = default;
};

enum class ParseErrorKind {
  EmptyInput,
  UnknownElement,
  UnbalancedParenthesis,
  UnmatchedRingClosure,
  ValenceViolation,
  DuplicateBond,
  Syntax,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  // Byte offset into the input text where the problem was detected.
  std::size_t offset() const { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

class KekulizeError : public std::runtime_error {
 public:
  explicit KekulizeError(const std::string& what)
      : std::runtime_error(what) {}
};

const char* to_string(ParseErrorKind kind);

// --- element data ------------------------------------------------------

// True for the ten organic-subset elements that may appear outside brackets.
bool is_organic_subset(std::string_view symbol);

// True for any recognized element symbol (case-sensitive, e.g. "Cl").
bool is_known_element(std::string_view symbol);

// Allowed total valences for the organic-subset table, adjusted for formal
// charge. Empty when the element is outside the table (no check applies).
std::vector<int> allowed_valences(std::string_view symbol, int charge);

// Attached-hydrogen count implied for a bare (non-bracket) atom with the
// given bond-order sum; aromatic atoms reserve one extra connection.
int implicit_hydrogens(std::string_view symbol, int bond_order_sum,
                       bool aromatic);

// --- operations --------------------------------------------------------

// Parse a SMILES string (organic subset, bracket atoms, charges, isotopes,
// ring closures incl. %nn, branches, '.' fragment separators, stereo
// annotations) into a validated MoleculeGraph.
MoleculeGraph parse_smiles(std::string_view text);

// Emit a SMILES string visiting atoms in the given order: DFS starts from
// the first atom of each fragment and neighbors are visited by ascending
// position in `order`. `order` must be a permutation of the atom indices.
std::string write_smiles(const MoleculeGraph& graph,
                         const std::vector<int>& order);

// Identity-order convenience overload.
std::string write_smiles(const MoleculeGraph& graph);

// Canonical form via iterative neighborhood-invariant refinement with
// exhaustive tie individualization; stable under any atom or ring-closure
// renumbering of an isomorphic input. Stereo annotations are ignored.
CanonicalSmiles canonicalize(const MoleculeGraph& graph);

// Convert every implied hydrogen into an explicit H atom with a single
// bond. Heavy-atom subgraph is unchanged.
MoleculeGraph add_explicit_hydrogens(const MoleculeGraph& graph);

// Replace aromatic bonds with an alternating single/double assignment that
// satisfies every atom's valence. Throws KekulizeError when no assignment
// exists (including single aromatic rings whose pi-electron count breaks
// the 4n+2 rule).
MoleculeGraph kekulize(const MoleculeGraph& graph);

// Relabel ring-closure identifiers with a seed-deterministic injective map
// into 1..99, using %nn syntax for two-digit ids. Only ring-closure tokens
// change; the parsed graph is unchanged up to isomorphism.
std::string renumber_ring_closures(std::string_view text, std::uint64_t seed);

// Deterministic relabeling with an explicit old-id -> new-id map. Ids
// absent from the map keep their value.
std::string renumber_ring_closures(std::string_view text,
                                   const std::vector<std::pair<int, int>>& map);

// Exact isomorphism: true iff an atom bijection preserves element, charge,
// aromaticity, H count, isotope, and all bonds with their orders.
bool graph_isomorphic(const MoleculeGraph& a, const MoleculeGraph& b);

// Skeleton comparison used by the kekulization probe: element, charge and
// total hydrogen per atom plus bare connectivity, ignoring bond orders and
// aromatic flags.
bool skeleton_isomorphic(const MoleculeGraph& a, const MoleculeGraph& b);

// Collapse explicit H atoms into their neighbor's hcount; used to compare
// hydrogen-expanded graphs against their sources.
MoleculeGraph collapse_explicit_hydrogens(const MoleculeGraph& graph);

// Connected components as standalone graphs (atom order preserved).
std::vector<MoleculeGraph> split_fragments(const MoleculeGraph& graph);

// parse + valence check; the validity notion used by the evaluation suite.
bool is_valid_smiles(std::string_view text);

}  // namespace molforge

#endif  // MOLFORGE_SMILES_HPP
