//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace molforge {

std::vector<MoleculeGraph> split_fragments(const MoleculeGraph& graph) {
  const int n = graph.atom_count();
  std::vector<int> component(n, -1);
  const auto adj = graph.adjacency();
  int count = 0;
  for (int start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    std::vector<int> stack{start};
    component[start] = count;
    while (!stack.empty()) {
      const int atom = stack.back();
      stack.pop_back();
      for (int bond_idx : adj[atom]) {
        const Bond& bond = graph.bonds[bond_idx];
        const int peer = bond.a == atom ? bond.b : bond.a;
        if (component[peer] == -1) {
          component[peer] = count;
          stack.push_back(peer);
        }
      }
    }
    ++count;
  }

  std::vector<MoleculeGraph> fragments(count);
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    MoleculeGraph& frag = fragments[component[i]];
    remap[i] = frag.atom_count();
    frag.atoms.push_back(graph.atoms[i]);
  }
  for (const Bond& bond : graph.bonds) {
    Bond copy = bond;
    copy.a = remap[bond.a];
    copy.b = remap[bond.b];
    fragments[component[bond.a]].bonds.push_back(copy);
  }
  return fragments;
}

MoleculeGraph add_explicit_hydrogens(const MoleculeGraph& graph) {
  MoleculeGraph out = graph;
  const int n = graph.atom_count();
  for (int i = 0; i < n; ++i) {
    const int hydrogens = out.atoms[i].hcount;
    out.atoms[i].hcount = 0;
    for (int h = 0; h < hydrogens; ++h) {
      Atom hydrogen;
      hydrogen.element = "H";
      const int idx = out.atom_count();
      out.atoms.push_back(hydrogen);
      out.bonds.push_back(Bond{i, idx, BondOrder::Single});
    }
  }
  return out;
}

MoleculeGraph collapse_explicit_hydrogens(const MoleculeGraph& graph) {
  const int n = graph.atom_count();
  const auto adj = graph.adjacency();
  std::vector<bool> collapse(n, false);
  std::vector<int> extra_h(n, 0);
  for (int i = 0; i < n; ++i) {
    const Atom& atom = graph.atoms[i];
    if (atom.element != "H" || atom.charge != 0 || atom.isotope ||
        atom.hcount != 0 || atom.aromatic) {
      continue;
    }
    if (adj[i].size() != 1) continue;
    const Bond& bond = graph.bonds[adj[i][0]];
    if (bond.order != BondOrder::Single) continue;
    const int peer = bond.a == i ? bond.b : bond.a;
    if (graph.atoms[peer].element == "H") continue;  // keep H-H intact
    collapse[i] = true;
    ++extra_h[peer];
  }

  MoleculeGraph out;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (collapse[i]) continue;
    remap[i] = out.atom_count();
    Atom atom = graph.atoms[i];
    atom.hcount += extra_h[i];
    out.atoms.push_back(atom);
  }
  for (const Bond& bond : graph.bonds) {
    if (remap[bond.a] < 0 || remap[bond.b] < 0) continue;
    Bond copy = bond;
    copy.a = remap[bond.a];
    copy.b = remap[bond.b];
    out.bonds.push_back(copy);
  }
  return out;
}

namespace {

// Sigma valence: every bond at its integer order with aromatic counted 1,
// plus attached hydrogens.
int sigma_valence(const MoleculeGraph& graph,
                  const std::vector<std::vector<int>>& adj, int atom) {
  int sum = 0;
  for (int bond_idx : adj[atom]) {
    const Bond& bond = graph.bonds[bond_idx];
    sum += bond.aromatic() ? 1 : static_cast<int>(bond.order);
  }
  return sum + graph.atoms[atom].hcount;
}

// Whether the atom must carry one double bond in the kekulized form.
bool wants_double_bond(const MoleculeGraph& graph,
                       const std::vector<std::vector<int>>& adj, int atom) {
  const Atom& a = graph.atoms[atom];
  const std::vector<int> allowed = allowed_valences(a.element, a.charge);
  if (allowed.empty()) return false;
  const int sigma = sigma_valence(graph, adj, atom);
  for (int v : allowed) {
    if (v >= sigma) return v > sigma;
  }
  return false;
}

// Pi electrons the atom donates to a single aromatic ring: 1 when it will
// carry a double bond, 2 for a lone-pair donor, 0 for an empty orbital.
int pi_contribution(const MoleculeGraph& graph,
                    const std::vector<std::vector<int>>& adj, int atom) {
  if (wants_double_bond(graph, adj, atom)) return 1;
  const Atom& a = graph.atoms[atom];
  if (a.charge < 0) return 2;
  if (a.charge > 0) return 0;
  static const std::array<std::string_view, 6> kLonePairDonors = {
      "N", "O", "S", "P", "Se", "As"};
  return std::find(kLonePairDonors.begin(), kLonePairDonors.end(),
                   a.element) != kLonePairDonors.end()
             ? 2
             : 0;
}

// Exhaustive search for a matching over `edges` covering every atom in
// `required`. Returns the matched edge set via `matched`, or false.
bool find_cover_matching(const std::vector<std::pair<int, int>>& edges,
                         const std::vector<std::vector<int>>& edges_at,
                         const std::vector<int>& required,
                         std::size_t next_required, std::vector<bool>& used,
                         std::vector<int>& matched) {
  while (next_required < required.size() && used[required[next_required]]) {
    ++next_required;
  }
  if (next_required >= required.size()) return true;
  const int atom = required[next_required];
  for (int edge_idx : edges_at[atom]) {
    const auto [x, y] = edges[edge_idx];
    const int peer = x == atom ? y : x;
    if (used[peer]) continue;
    used[atom] = used[peer] = true;
    matched.push_back(edge_idx);
    if (find_cover_matching(edges, edges_at, required, next_required + 1, used,
                            matched)) {
      return true;
    }
    matched.pop_back();
    used[atom] = used[peer] = false;
  }
  return false;
}

}  // namespace

MoleculeGraph kekulize(const MoleculeGraph& graph) {
  MoleculeGraph out = graph;
  const auto adj = graph.adjacency();

  std::vector<int> aromatic_bonds;
  for (int i = 0; i < graph.bond_count(); ++i) {
    if (graph.bonds[i].aromatic()) aromatic_bonds.push_back(i);
  }
  if (aromatic_bonds.empty()) {
    bool any_aromatic_atom = false;
    for (const Atom& atom : graph.atoms) any_aromatic_atom |= atom.aromatic;
    if (!any_aromatic_atom) return out;
  }

  const int n = graph.atom_count();
  std::vector<bool> aromatic_atom(n, false);
  for (int i = 0; i < n; ++i) aromatic_atom[i] = graph.atoms[i].aromatic;

  // Connected components of the aromatic subgraph.
  std::vector<int> component(n, -1);
  int component_count = 0;
  for (int start = 0; start < n; ++start) {
    if (!aromatic_atom[start] || component[start] != -1) continue;
    std::vector<int> stack{start};
    component[start] = component_count;
    while (!stack.empty()) {
      const int atom = stack.back();
      stack.pop_back();
      for (int bond_idx : adj[atom]) {
        const Bond& bond = graph.bonds[bond_idx];
        if (!bond.aromatic()) continue;
        const int peer = bond.a == atom ? bond.b : bond.a;
        if (component[peer] == -1) {
          component[peer] = component_count;
          stack.push_back(peer);
        }
      }
    }
    ++component_count;
  }

  // Pi-electron legitimacy for isolated simple rings (every member has
  // exactly two aromatic bonds). Fused systems are governed by matching
  // feasibility alone.
  for (int c = 0; c < component_count; ++c) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (component[i] == c) members.push_back(i);
    }
    bool simple_cycle = members.size() >= 3;
    int pi = 0;
    for (int atom : members) {
      int aromatic_degree = 0;
      for (int bond_idx : adj[atom]) {
        if (graph.bonds[bond_idx].aromatic()) ++aromatic_degree;
      }
      if (aromatic_degree != 2) simple_cycle = false;
      pi += pi_contribution(graph, adj, atom);
    }
    if (members.size() < 3) {
      throw KekulizeError("aromatic system smaller than a ring");
    }
    if (simple_cycle && pi % 4 != 2) {
      std::ostringstream msg;
      msg << "aromatic ring with " << pi
          << " pi electrons violates the 4n+2 rule";
      throw KekulizeError(msg.str());
    }
  }

  // Perfect matching over atoms that need a double bond.
  std::vector<int> required;
  for (int i = 0; i < n; ++i) {
    if (aromatic_atom[i] && wants_double_bond(graph, adj, i)) {
      required.push_back(i);
    }
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<int> edge_bond;
  std::vector<std::vector<int>> edges_at(n);
  for (int bond_idx : aromatic_bonds) {
    const Bond& bond = graph.bonds[bond_idx];
    const bool eligible =
        wants_double_bond(graph, adj, bond.a) &&
        wants_double_bond(graph, adj, bond.b);
    if (!eligible) continue;
    const int edge_idx = static_cast<int>(edges.size());
    edges.emplace_back(bond.a, bond.b);
    edge_bond.push_back(bond_idx);
    edges_at[bond.a].push_back(edge_idx);
    edges_at[bond.b].push_back(edge_idx);
  }

  std::vector<bool> used(n, false);
  std::vector<int> matched;
  if (!find_cover_matching(edges, edges_at, required, 0, used, matched)) {
    throw KekulizeError("no alternating bond assignment satisfies valences");
  }

  for (int bond_idx : aromatic_bonds) out.bonds[bond_idx].order = BondOrder::Single;
  for (int edge_idx : matched) {
    out.bonds[edge_bond[edge_idx]].order = BondOrder::Double;
  }
  for (int i = 0; i < n; ++i) out.atoms[i].aromatic = false;
  return out;
}

namespace {

struct RingToken {
  std::size_t start = 0;
  std::size_t length = 0;
  int id = 0;
};

// Lexical scan for ring-closure tokens; digits inside bracket atoms are
// isotopes, H counts, charges, or atom classes and must be skipped.
std::vector<RingToken> scan_ring_tokens(std::string_view text) {
  std::vector<RingToken> tokens;
  bool in_bracket = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[') {
      in_bracket = true;
    } else if (c == ']') {
      in_bracket = false;
    } else if (!in_bracket) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tokens.push_back({i, 1, c - '0'});
      } else if (c == '%' && i + 2 < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
                 std::isdigit(static_cast<unsigned char>(text[i + 2]))) {
        tokens.push_back(
            {i, 3, (text[i + 1] - '0') * 10 + (text[i + 2] - '0')});
        i += 2;
      }
    }
  }
  return tokens;
}

std::string apply_ring_map(std::string_view text,
                           const std::vector<RingToken>& tokens,
                           const std::map<int, int>& map) {
  std::string out;
  std::size_t cursor = 0;
  for (const RingToken& token : tokens) {
    out.append(text.substr(cursor, token.start - cursor));
    auto it = map.find(token.id);
    const int id = it == map.end() ? token.id : it->second;
    if (id < 10) {
      out.push_back(static_cast<char>('0' + id));
    } else {
      out.push_back('%');
      out.push_back(static_cast<char>('0' + id / 10));
      out.push_back(static_cast<char>('0' + id % 10));
    }
    cursor = token.start + token.length;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace

std::string renumber_ring_closures(std::string_view text, std::uint64_t seed) {
  parse_smiles(text);  // propagate parser errors before rewriting
  const std::vector<RingToken> tokens = scan_ring_tokens(text);

  std::vector<int> distinct;
  for (const RingToken& token : tokens) {
    if (std::find(distinct.begin(), distinct.end(), token.id) ==
        distinct.end()) {
      distinct.push_back(token.id);
    }
  }

  // Partial Fisher-Yates over 1..99 with raw engine output; avoids
  // std::uniform_int_distribution whose mapping differs across standard
  // libraries.
  std::mt19937_64 rng(seed);
  std::vector<int> pool(99);
  std::iota(pool.begin(), pool.end(), 1);
  std::map<int, int> map;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    const std::size_t j = k + static_cast<std::size_t>(
                                  rng() % static_cast<std::uint64_t>(
                                              pool.size() - k));
    std::swap(pool[k], pool[j]);
    map[distinct[k]] = pool[k];
  }
  return apply_ring_map(text, tokens, map);
}

std::string renumber_ring_closures(
    std::string_view text, const std::vector<std::pair<int, int>>& map) {
  parse_smiles(text);
  std::map<int, int> lookup(map.begin(), map.end());
  return apply_ring_map(text, scan_ring_tokens(text), lookup);
}

namespace {

struct AtomSignature {
  std::string element;
  int charge;
  int hcount;
  int isotope;
  bool aromatic;
  int degree;

  auto tie() const {
    return std::tie(element, charge, hcount, isotope, aromatic, degree);
  }
  bool operator<(const AtomSignature& o) const { return tie() < o.tie(); }
  bool operator==(const AtomSignature& o) const { return tie() == o.tie(); }
};

AtomSignature signature_of(const MoleculeGraph& graph, int atom, int degree,
                           bool strict) {
  const Atom& a = graph.atoms[atom];
  return AtomSignature{a.element,
                       a.charge,
                       a.hcount,
                       a.isotope.value_or(std::numeric_limits<int>::min()),
                       strict && a.aromatic,
                       degree};
}

bool isomorphic_impl(const MoleculeGraph& a, const MoleculeGraph& b,
                     bool strict_orders) {
  if (a.atom_count() != b.atom_count() || a.bond_count() != b.bond_count()) {
    return false;
  }
  const int n = a.atom_count();
  const auto adj_a = a.adjacency();
  const auto adj_b = b.adjacency();

  std::vector<AtomSignature> sig_a(n), sig_b(n);
  for (int i = 0; i < n; ++i) {
    sig_a[i] = signature_of(a, i, static_cast<int>(adj_a[i].size()),
                            strict_orders);
    sig_b[i] = signature_of(b, i, static_cast<int>(adj_b[i].size()),
                            strict_orders);
  }
  {
    auto sorted_a = sig_a;
    auto sorted_b = sig_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (!(sorted_a == sorted_b)) return false;
  }

  // Match a-atoms in order of ascending candidate count.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> candidate_count(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (sig_a[i] == sig_b[j]) ++candidate_count[i];
    }
    if (candidate_count[i] == 0) return false;
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return candidate_count[x] < candidate_count[y];
  });

  std::vector<int> map_ab(n, -1), map_ba(n, -1);

  auto bond_order_of = [](const MoleculeGraph& g,
                          const std::vector<std::vector<int>>& adj, int x,
                          int y) -> int {
    for (int bond_idx : adj[x]) {
      const Bond& bond = g.bonds[bond_idx];
      if ((bond.a == x && bond.b == y) || (bond.a == y && bond.b == x)) {
        return static_cast<int>(bond.order);
      }
    }
    return 0;
  };

  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == n) return true;
    const int u = order[depth];
    for (int v = 0; v < n; ++v) {
      if (map_ba[v] != -1 || !(sig_a[u] == sig_b[v])) continue;
      bool ok = true;
      for (int bond_idx : adj_a[u]) {
        const Bond& bond = a.bonds[bond_idx];
        const int peer = bond.a == u ? bond.b : bond.a;
        if (map_ab[peer] == -1) continue;
        const int order_b = bond_order_of(b, adj_b, v, map_ab[peer]);
        if (order_b == 0) {
          ok = false;
          break;
        }
        if (strict_orders && order_b != static_cast<int>(bond.order)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map_ab[u] = v;
      map_ba[v] = u;
      if (extend(depth + 1)) return true;
      map_ab[u] = -1;
      map_ba[v] = -1;
    }
    return false;
  };

  return extend(0);
}

}  // namespace

bool graph_isomorphic(const MoleculeGraph& a, const MoleculeGraph& b) {
  return isomorphic_impl(a, b, /*strict_orders=*/true);
}

bool skeleton_isomorphic(const MoleculeGraph& a, const MoleculeGraph& b) {
  return isomorphic_impl(a, b, /*strict_orders=*/false);
}

}  // namespace molforge
