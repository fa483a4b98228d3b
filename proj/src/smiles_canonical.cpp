//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/smiles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace molforge {

namespace {

// Initial atom invariant for canonical ranking. Stereo annotations are
// deliberately absent; isotopes and charges are not.
struct AtomKey {
  int element_code;
  int isotope;
  int charge;
  int hcount;
  int aromatic;
  int degree;

  auto tie() const {
    return std::tie(element_code, isotope, charge, hcount, aromatic, degree);
  }
  bool operator<(const AtomKey& other) const { return tie() < other.tie(); }
  bool operator==(const AtomKey& other) const { return tie() == other.tie(); }
};

int element_code(const std::string& symbol) {
  int code = 0;
  for (char c : symbol) code = code * 128 + c;
  return code;
}

std::vector<int> initial_ranks(const MoleculeGraph& graph) {
  const int n = graph.atom_count();
  const auto adj = graph.adjacency();
  std::vector<AtomKey> keys(n);
  for (int i = 0; i < n; ++i) {
    const Atom& atom = graph.atoms[i];
    keys[i] = AtomKey{element_code(atom.element),
                      atom.isotope.value_or(std::numeric_limits<int>::min()),
                      atom.charge,
                      atom.hcount,
                      atom.aromatic ? 1 : 0,
                      static_cast<int>(adj[i].size())};
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(n, 0);
  for (int pos = 1; pos < n; ++pos) {
    const int prev = idx[pos - 1];
    const int cur = idx[pos];
    ranks[cur] = ranks[prev] + (keys[prev] == keys[cur] ? 0 : 1);
  }
  return ranks;
}

// One round of neighborhood refinement; returns dense ranks.
std::vector<int> refine_once(const MoleculeGraph& graph,
                             const std::vector<std::vector<int>>& adj,
                             const std::vector<int>& ranks) {
  const int n = graph.atom_count();
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  std::vector<Key> keys(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, int>> env;
    env.reserve(adj[i].size());
    for (int bond_idx : adj[i]) {
      const Bond& bond = graph.bonds[bond_idx];
      const int peer = bond.a == i ? bond.b : bond.a;
      env.emplace_back(static_cast<int>(bond.order), ranks[peer]);
    }
    std::sort(env.begin(), env.end());
    keys[i] = {ranks[i], std::move(env)};
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> out(n, 0);
  for (int pos = 1; pos < n; ++pos) {
    const int prev = idx[pos - 1];
    const int cur = idx[pos];
    out[cur] = out[prev] + (keys[prev] == keys[cur] ? 0 : 1);
  }
  return out;
}

std::vector<int> refine(const MoleculeGraph& graph,
                        const std::vector<std::vector<int>>& adj,
                        std::vector<int> ranks) {
  while (true) {
    std::vector<int> next = refine_once(graph, adj, ranks);
    if (next == ranks) return ranks;
    ranks = std::move(next);
  }
}

// Lowest rank value shared by more than one atom, or -1 when discrete.
int first_tied_rank(const std::vector<int>& ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<int> count(n, 0);
  for (int r : ranks) ++count[r];
  for (int r = 0; r < n; ++r) {
    if (count[r] > 1) return r;
  }
  return -1;
}

std::string emit_by_ranks(const MoleculeGraph& graph,
                          const std::vector<int>& ranks) {
  std::vector<int> order(ranks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ranks[a] < ranks[b]; });
  return write_smiles(graph, order);
}

// Exhaustive tie individualization: every member of the first tied cell is
// tried in turn and the lexicographically smallest emission wins. This
// keeps the result independent of input atom numbering even for symmetric
// molecules where plain refinement cannot separate atoms.
std::string canonical_string(const MoleculeGraph& graph,
                             const std::vector<std::vector<int>>& adj,
                             std::vector<int> ranks) {
  ranks = refine(graph, adj, std::move(ranks));
  const int tied = first_tied_rank(ranks);
  if (tied < 0) return emit_by_ranks(graph, ranks);

  std::string best;
  for (int atom = 0; atom < graph.atom_count(); ++atom) {
    if (ranks[atom] != tied) continue;
    std::vector<int> split(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) split[i] = ranks[i] * 2;
    split[atom] -= 1;
    std::string candidate = canonical_string(graph, adj, std::move(split));
    if (best.empty() || candidate < best) best = std::move(candidate);
  }
  return best;
}

}  // namespace

CanonicalSmiles canonicalize(const MoleculeGraph& graph) {
  std::vector<std::string> parts;
  for (const MoleculeGraph& fragment : split_fragments(graph)) {
    parts.push_back(canonical_string(fragment, fragment.adjacency(),
                                     initial_ranks(fragment)));
  }
  std::sort(parts.begin(), parts.end());
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) text += '.';
    text += parts[i];
  }
  return CanonicalSmiles{std::move(text)};
}

}  // namespace molforge
