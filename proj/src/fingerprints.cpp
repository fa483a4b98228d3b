//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/fingerprints.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cctype>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "molforge/text.hpp"

namespace molforge {

void Fingerprint::set(int bit) {
  blocks[static_cast<std::size_t>(bit) / 64] |= 1ULL << (bit % 64);
}

bool Fingerprint::test(int bit) const {
  return (blocks[static_cast<std::size_t>(bit) / 64] >> (bit % 64)) & 1ULL;
}

int Fingerprint::count() const {
  int total = 0;
  for (std::uint64_t block : blocks) total += std::popcount(block);
  return total;
}

std::vector<int> Fingerprint::set_bits() const {
  std::vector<int> bits;
  for (int i = 0; i < nbits; ++i) {
    if (test(i)) bits.push_back(i);
  }
  return bits;
}

namespace {

Fingerprint make_fingerprint(FingerprintKind kind, int nbits, int param) {
  Fingerprint fp;
  fp.kind = kind;
  fp.nbits = nbits;
  fp.param = param;
  fp.blocks.assign((static_cast<std::size_t>(nbits) + 63) / 64, 0);
  return fp;
}

std::string atom_invariant(const MoleculeGraph& graph, int atom, int degree) {
  const Atom& a = graph.atoms[atom];
  std::ostringstream out;
  out << a.element << '|' << a.charge << '|' << a.hcount << '|'
      << (a.aromatic ? 1 : 0) << '|' << degree << '|'
      << (a.isotope ? *a.isotope : 0);
  return out.str();
}

char bond_code(const Bond& bond) {
  switch (bond.order) {
    case BondOrder::Single: return '-';
    case BondOrder::Double: return '=';
    case BondOrder::Triple: return '#';
    case BondOrder::Aromatic: return ':';
  }
  return '?';
}

std::string path_atom_label(const Atom& atom) {
  std::string label = atom.element;
  if (atom.aromatic) {
    for (char& c : label) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (atom.charge > 0) label += '+';
  if (atom.charge < 0) label += '-';
  return label;
}

}  // namespace

Fingerprint morgan_fingerprint(const MoleculeGraph& graph, int radius,
                               int nbits) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (nbits < 64 || (nbits & (nbits - 1)) != 0) {
    throw std::invalid_argument("nbits must be a power of two >= 64");
  }
  Fingerprint fp = make_fingerprint(FingerprintKind::Morgan, nbits, radius);

  const int n = graph.atom_count();
  const auto adj = graph.adjacency();
  std::vector<std::uint64_t> ids(n);
  for (int i = 0; i < n; ++i) {
    ids[i] = fnv1a64(atom_invariant(graph, i, static_cast<int>(adj[i].size())));
    fp.set(static_cast<int>(ids[i] % static_cast<std::uint64_t>(nbits)));
  }

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> env;
      env.reserve(adj[i].size());
      for (int bond_idx : adj[i]) {
        const Bond& bond = graph.bonds[bond_idx];
        const int peer = bond.a == i ? bond.b : bond.a;
        std::ostringstream part;
        part << bond_code(bond) << std::hex << ids[peer];
        env.push_back(part.str());
      }
      std::sort(env.begin(), env.end());
      std::ostringstream key;
      key << std::hex << ids[i];
      for (const std::string& part : env) key << ';' << part;
      next[i] = fnv1a64(key.str());
      fp.set(static_cast<int>(next[i] % static_cast<std::uint64_t>(nbits)));
    }
    ids = std::move(next);
  }
  return fp;
}

Fingerprint path_fingerprint(const MoleculeGraph& graph, int max_len,
                             int nbits) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (nbits < 64 || (nbits & (nbits - 1)) != 0) {
    throw std::invalid_argument("nbits must be a power of two >= 64");
  }
  Fingerprint fp = make_fingerprint(FingerprintKind::Path, nbits, max_len);

  const int n = graph.atom_count();
  const auto adj = graph.adjacency();
  std::set<std::string> paths;

  // Simple-path DFS from every atom; forward/reverse duplicates collapse
  // through the canonical min() of the two spellings.
  std::vector<int> atom_stack;
  std::vector<char> bond_stack;
  std::vector<bool> on_path(n, false);

  auto record = [&] {
    std::string forward;
    std::string reverse;
    for (std::size_t i = 0; i < atom_stack.size(); ++i) {
      if (i > 0) forward += bond_stack[i - 1];
      forward += path_atom_label(graph.atoms[atom_stack[i]]);
    }
    for (std::size_t i = atom_stack.size(); i-- > 0;) {
      if (i + 1 < atom_stack.size()) reverse += bond_stack[i];
      reverse += path_atom_label(graph.atoms[atom_stack[i]]);
    }
    paths.insert(std::min(forward, reverse));
  };

  std::function<void(int)> extend = [&](int atom) {
    for (int bond_idx : adj[atom]) {
      const Bond& bond = graph.bonds[bond_idx];
      const int peer = bond.a == atom ? bond.b : bond.a;
      if (on_path[peer]) continue;
      atom_stack.push_back(peer);
      bond_stack.push_back(bond_code(bond));
      on_path[peer] = true;
      record();
      if (static_cast<int>(bond_stack.size()) < max_len) extend(peer);
      on_path[peer] = false;
      atom_stack.pop_back();
      bond_stack.pop_back();
    }
  };

  for (int start = 0; start < n; ++start) {
    atom_stack.assign(1, start);
    bond_stack.clear();
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[start] = true;
    extend(start);
  }

  for (const std::string& path : paths) {
    fp.set(static_cast<int>(fnv1a64(path) % static_cast<std::uint64_t>(nbits)));
  }
  return fp;
}

// --- structural keys ----------------------------------------------------

namespace {

struct PatternAtom {
  std::string element;  // empty = wildcard (unused in the shipped set)
  bool require_aromatic = false;
  int min_hydrogens = 0;
  bool require_positive = false;
};

struct PathPattern {
  std::vector<PatternAtom> atoms;
  std::vector<char> bonds;  // '-', '=', '#', ':', '~'
};

PathPattern parse_path_pattern(const std::string& text) {
  PathPattern pattern;
  std::size_t i = 0;
  bool expect_atom = true;
  while (i < text.size()) {
    if (expect_atom) {
      PatternAtom atom;
      char c = text[i];
      if (std::islower(static_cast<unsigned char>(c))) {
        atom.require_aromatic = true;
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      atom.element.push_back(c);
      ++i;
      if (i < text.size() && std::islower(static_cast<unsigned char>(text[i])) &&
          text[i] != 'h' && is_known_element(atom.element + text[i])) {
        atom.element.push_back(text[i]);
        ++i;
      }
      if (i < text.size() && text[i] == 'h') {
        ++i;
        int count = 0;
        while (i < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i]))) {
          count = count * 10 + (text[i] - '0');
          ++i;
        }
        atom.min_hydrogens = count;
      }
      if (i < text.size() && text[i] == '+') {
        atom.require_positive = true;
        ++i;
      }
      pattern.atoms.push_back(atom);
      expect_atom = false;
    } else {
      const char c = text[i];
      if (c != '-' && c != '=' && c != '#' && c != ':' && c != '~') {
        throw std::invalid_argument("bad bond character in pattern: " + text);
      }
      pattern.bonds.push_back(c);
      ++i;
      expect_atom = true;
    }
  }
  if (pattern.atoms.empty() || pattern.atoms.size() != pattern.bonds.size() + 1) {
    throw std::invalid_argument("malformed path pattern: " + text);
  }
  return pattern;
}

int total_hydrogens(const MoleculeGraph& graph,
                    const std::vector<std::vector<int>>& adj, int atom) {
  int total = graph.atoms[atom].hcount;
  for (int bond_idx : adj[atom]) {
    const Bond& bond = graph.bonds[bond_idx];
    const int peer = bond.a == atom ? bond.b : bond.a;
    if (graph.atoms[peer].element == "H") ++total;
  }
  return total;
}

bool atom_matches(const MoleculeGraph& graph,
                  const std::vector<std::vector<int>>& adj, int atom,
                  const PatternAtom& pattern) {
  const Atom& a = graph.atoms[atom];
  if (!pattern.element.empty() && a.element != pattern.element) return false;
  if (pattern.require_aromatic && !a.aromatic) return false;
  if (pattern.require_positive && a.charge <= 0) return false;
  if (pattern.min_hydrogens > 0 &&
      total_hydrogens(graph, adj, atom) < pattern.min_hydrogens) {
    return false;
  }
  return true;
}

bool bond_matches(const Bond& bond, char code) {
  switch (code) {
    case '~': return true;
    case ':': return bond.order == BondOrder::Aromatic;
    case '-': return bond.order == BondOrder::Single;
    case '=': return bond.order == BondOrder::Double;
    case '#': return bond.order == BondOrder::Triple;
  }
  return false;
}

bool match_path_from(const MoleculeGraph& graph,
                     const std::vector<std::vector<int>>& adj,
                     const PathPattern& pattern, std::size_t depth,
                     std::vector<int>& assignment, std::vector<bool>& used) {
  if (depth == pattern.atoms.size()) return true;
  const int prev = assignment[depth - 1];
  for (int bond_idx : adj[prev]) {
    const Bond& bond = graph.bonds[bond_idx];
    if (!bond_matches(bond, pattern.bonds[depth - 1])) continue;
    const int peer = bond.a == prev ? bond.b : bond.a;
    if (used[peer]) continue;
    if (!atom_matches(graph, adj, peer, pattern.atoms[depth])) continue;
    assignment.push_back(peer);
    used[peer] = true;
    if (match_path_from(graph, adj, pattern, depth + 1, assignment, used)) {
      return true;
    }
    used[peer] = false;
    assignment.pop_back();
  }
  return false;
}

bool match_path(const MoleculeGraph& graph, const PathPattern& pattern) {
  const auto adj = graph.adjacency();
  std::vector<int> assignment;
  std::vector<bool> used(graph.atom_count(), false);
  for (int start = 0; start < graph.atom_count(); ++start) {
    if (!atom_matches(graph, adj, start, pattern.atoms[0])) continue;
    assignment.assign(1, start);
    std::fill(used.begin(), used.end(), false);
    used[start] = true;
    if (match_path_from(graph, adj, pattern, 1, assignment, used)) return true;
  }
  return false;
}

// Sizes of the smallest ring through each bond.
std::set<int> ring_sizes(const MoleculeGraph& graph) {
  std::set<int> sizes;
  const auto adj = graph.adjacency();
  for (int skip = 0; skip < graph.bond_count(); ++skip) {
    const int source = graph.bonds[skip].a;
    const int target = graph.bonds[skip].b;
    std::vector<int> dist(graph.atom_count(), -1);
    std::queue<int> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int atom = queue.front();
      queue.pop();
      for (int bond_idx : adj[atom]) {
        if (bond_idx == skip) continue;
        const Bond& bond = graph.bonds[bond_idx];
        const int peer = bond.a == atom ? bond.b : bond.a;
        if (dist[peer] == -1) {
          dist[peer] = dist[atom] + 1;
          queue.push(peer);
        }
      }
    }
    if (dist[target] >= 0) sizes.insert(dist[target] + 1);
  }
  return sizes;
}

}  // namespace

bool key_matches(const MoleculeGraph& graph, const std::string& descriptor) {
  const std::size_t colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : descriptor.substr(colon + 1);

  if (head == "element") {
    for (const Atom& atom : graph.atoms) {
      if (atom.element == rest) return true;
    }
    return false;
  }
  if (head == "count") {
    const std::size_t second = rest.find(':');
    const std::string element = rest.substr(0, second);
    const int wanted = std::stoi(rest.substr(second + 1));
    int have = 0;
    for (const Atom& atom : graph.atoms) have += atom.element == element;
    return have >= wanted;
  }
  if (head == "ring") {
    return ring_sizes(graph).contains(std::stoi(rest));
  }
  if (head == "aromatic-ring") {
    for (const Bond& bond : graph.bonds) {
      if (bond.aromatic()) return true;
    }
    return false;
  }
  if (head == "charge") {
    for (const Atom& atom : graph.atoms) {
      if (rest == "pos" && atom.charge > 0) return true;
      if (rest == "neg" && atom.charge < 0) return true;
    }
    return false;
  }
  if (head == "isotope") {
    for (const Atom& atom : graph.atoms) {
      if (atom.isotope) return true;
    }
    return false;
  }
  if (head == "path") {
    return match_path(graph, parse_path_pattern(rest));
  }
  throw std::invalid_argument("unknown key descriptor: " + descriptor);
}

std::vector<StructuralKey> parse_structural_keys(const std::string& text) {
  std::vector<StructuralKey> keys;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 = line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw std::invalid_argument("bad key line: " + line);
    }
    StructuralKey key;
    key.id = std::stoi(line.substr(0, tab1));
    key.descriptor = line.substr(tab1 + 1, tab2 - tab1 - 1);
    key.label = line.substr(tab2 + 1);
    keys.push_back(std::move(key));
  }
  return keys;
}

std::vector<StructuralKey> load_structural_keys(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open key file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_structural_keys(buffer.str());
}

const std::vector<StructuralKey>& default_structural_keys() {
  static const std::vector<StructuralKey> keys =
      parse_structural_keys(default_structural_keys_text());
  return keys;
}

Fingerprint structural_keys(const MoleculeGraph& graph) {
  return structural_keys(graph, default_structural_keys());
}

Fingerprint structural_keys(const MoleculeGraph& graph,
                            const std::vector<StructuralKey>& keys) {
  Fingerprint fp;
  fp.kind = FingerprintKind::Keys;
  fp.nbits = static_cast<int>(keys.size());
  fp.param = 0;
  fp.blocks.assign((keys.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (key_matches(graph, keys[i].descriptor)) {
      fp.set(static_cast<int>(i));
    }
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (!a.comparable_with(b)) {
    throw KindMismatch("fingerprints differ in kind or parameters");
  }
  int intersection = 0;
  int unite = 0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    intersection += std::popcount(a.blocks[i] & b.blocks[i]);
    unite += std::popcount(a.blocks[i] | b.blocks[i]);
  }
  if (unite == 0) return 1.0;
  return static_cast<double>(intersection) / static_cast<double>(unite);
}

}  // namespace molforge
