//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/smiles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace molforge {

namespace {

// True when the atom can be emitted as a bare organic-subset symbol: a
// re-parse must recover the same hydrogen count.
bool bare_eligible(const Atom& atom, int bond_order_sum) {
  if (!is_organic_subset(atom.element)) return false;
  if (atom.charge != 0 || atom.isotope.has_value()) return false;
  return implicit_hydrogens(atom.element, bond_order_sum, atom.aromatic) ==
         atom.hcount;
}

std::string atom_token(const Atom& atom, int bond_order_sum) {
  std::string symbol = atom.element;
  if (atom.aromatic) {
    for (char& c : symbol) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (bare_eligible(atom, bond_order_sum)) return symbol;

  std::ostringstream out;
  out << '[';
  if (atom.isotope) out << *atom.isotope;
  out << symbol;
  if (atom.hcount == 1) {
    out << 'H';
  } else if (atom.hcount > 1) {
    out << 'H' << atom.hcount;
  }
  if (atom.charge == 1) {
    out << '+';
  } else if (atom.charge == -1) {
    out << '-';
  } else if (atom.charge > 1) {
    out << '+' << atom.charge;
  } else if (atom.charge < -1) {
    out << '-' << -atom.charge;
  }
  out << ']';
  return out.str();
}

std::string ring_digit_token(int digit) {
  if (digit < 10) return std::string(1, static_cast<char>('0' + digit));
  std::ostringstream out;
  out << '%' << digit;
  return out.str();
}

class Writer {
 public:
  Writer(const MoleculeGraph& graph, const std::vector<int>& order)
      : graph_(graph), adj_(graph.adjacency()) {
    const int n = graph.atom_count();
    if (static_cast<int>(order.size()) != n) {
      throw std::invalid_argument("order must cover every atom exactly once");
    }
    rank_.assign(n, -1);
    for (int pos = 0; pos < n; ++pos) {
      const int atom = order[pos];
      if (atom < 0 || atom >= n || rank_[atom] != -1) {
        throw std::invalid_argument("order is not a permutation of atoms");
      }
      rank_[atom] = pos;
    }
  }

  std::string run() {
    const int n = graph_.atom_count();
    if (n == 0) return {};
    visited_.assign(n, false);
    children_.assign(n, {});
    ring_tokens_.assign(n, {});

    std::vector<std::vector<int>> components;
    std::vector<int> by_rank(n);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });

    for (int atom : by_rank) {
      if (visited_[atom]) continue;
      std::vector<int> component_order;
      classify(atom, component_order);
      components.push_back(std::move(component_order));
    }

    assign_ring_digits();

    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i > 0) out += '.';
      out += emit_atom(components[i].front());
    }
    return out;
  }

 private:
  struct Frame {
    int atom;
    int parent_bond;
    std::vector<int> neighbors;  // bond indices sorted by peer rank
    std::size_t next = 0;
  };

  // DFS by ascending rank; fills children_ (tree edges) and ring_bonds_
  // (back edges, discovered at their second endpoint).
  void classify(int start, std::vector<int>& visit_order) {
    std::vector<Frame> stack;
    stack.push_back(make_frame(start, -1));
    visited_[start] = true;
    visit_order.push_back(start);
    visit_pos_[start] = next_visit_pos_++;

    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next >= frame.neighbors.size()) {
        stack.pop_back();
        continue;
      }
      const int bond_idx = frame.neighbors[frame.next++];
      if (bond_idx == frame.parent_bond) continue;
      const Bond& bond = graph_.bonds[bond_idx];
      const int peer = bond.a == frame.atom ? bond.b : bond.a;
      if (visited_[peer]) {
        if (!ring_seen_.insert(bond_idx).second) continue;
        ring_bonds_.push_back(bond_idx);
        continue;
      }
      visited_[peer] = true;
      visit_order.push_back(peer);
      visit_pos_[peer] = next_visit_pos_++;
      children_[frame.atom].push_back(bond_idx);
      stack.push_back(make_frame(peer, bond_idx));
    }
  }

  Frame make_frame(int atom, int parent_bond) {
    Frame frame{atom, parent_bond, adj_[atom], 0};
    std::sort(frame.neighbors.begin(), frame.neighbors.end(),
              [&](int x, int y) {
                const int px = peer_of(x, atom);
                const int py = peer_of(y, atom);
                return rank_[px] < rank_[py];
              });
    return frame;
  }

  int peer_of(int bond_idx, int atom) const {
    const Bond& bond = graph_.bonds[bond_idx];
    return bond.a == atom ? bond.b : bond.a;
  }

  void assign_ring_digits() {
    // Opens get the smallest digit free at the first endpoint's turn;
    // digits are released when the closing endpoint is reached.
    std::map<int, std::vector<int>> opens_at;   // atom -> bond indices
    std::map<int, std::vector<int>> closes_at;  // atom -> bond indices
    for (int bond_idx : ring_bonds_) {
      const Bond& bond = graph_.bonds[bond_idx];
      const bool a_first = visit_pos_[bond.a] < visit_pos_[bond.b];
      const int first = a_first ? bond.a : bond.b;
      const int second = a_first ? bond.b : bond.a;
      opens_at[first].push_back(bond_idx);
      closes_at[second].push_back(bond_idx);
    }
    for (auto& [atom, bonds] : opens_at) {
      std::sort(bonds.begin(), bonds.end(), [&](int x, int y) {
        return visit_pos_[peer_of(x, atom)] < visit_pos_[peer_of(y, atom)];
      });
    }

    std::set<int> free_digits;
    for (int d = 1; d <= 99; ++d) free_digits.insert(d);
    std::map<int, int> digit_of;  // bond -> digit

    std::vector<std::pair<int, int>> pairs(visit_pos_.begin(),
                                           visit_pos_.end());
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });

    for (const auto& pair : pairs) {
      const int atom = pair.first;
      // Closes first: digit known, token has no bond symbol, digit freed.
      auto cit = closes_at.find(atom);
      if (cit != closes_at.end()) {
        std::sort(cit->second.begin(), cit->second.end(), [&](int x, int y) {
          return digit_of.at(x) < digit_of.at(y);
        });
        for (int bond_idx : cit->second) {
          const int digit = digit_of.at(bond_idx);
          ring_tokens_[atom].push_back(ring_digit_token(digit));
          free_digits.insert(digit);
        }
      }
      auto oit = opens_at.find(atom);
      if (oit != opens_at.end()) {
        for (int bond_idx : oit->second) {
          if (free_digits.empty()) {
            throw std::runtime_error("ring closure digits exhausted");
          }
          const int digit = *free_digits.begin();
          free_digits.erase(free_digits.begin());
          digit_of[bond_idx] = digit;
          ring_tokens_[atom].push_back(
              bond_symbol(graph_.bonds[bond_idx]) + ring_digit_token(digit));
        }
      }
    }
  }

  std::string bond_symbol(const Bond& bond) const {
    switch (bond.order) {
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return "";  // implied between aromatic atoms
      case BondOrder::Single:
        // Explicit '-' keeps a single bond between two aromatic atoms from
        // re-parsing as aromatic (e.g. biphenyl).
        if (graph_.atoms[bond.a].aromatic && graph_.atoms[bond.b].aromatic) {
          return "-";
        }
        return "";
    }
    return "";
  }

  std::string emit_atom(int atom) {
    int order_sum = 0;
    for (int bond_idx : adj_[atom]) {
      const Bond& bond = graph_.bonds[bond_idx];
      order_sum += bond.aromatic() ? 1 : static_cast<int>(bond.order);
    }
    std::string out = atom_token(graph_.atoms[atom], order_sum);
    for (const std::string& token : ring_tokens_[atom]) out += token;

    const auto& kids = children_[atom];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const int bond_idx = kids[i];
      const Bond& bond = graph_.bonds[bond_idx];
      const int child = peer_of(bond_idx, atom);
      const std::string body = bond_symbol(bond) + emit_atom(child);
      if (i + 1 < kids.size()) {
        out += '(' + body + ')';
      } else {
        out += body;
      }
    }
    return out;
  }

  const MoleculeGraph& graph_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> rank_;
  std::vector<bool> visited_;
  std::vector<std::vector<int>> children_;
  std::vector<int> ring_bonds_;
  std::set<int> ring_seen_;
  std::map<int, int> visit_pos_;
  int next_visit_pos_ = 0;
  std::vector<std::vector<std::string>> ring_tokens_;
};

}  // namespace

std::string write_smiles(const MoleculeGraph& graph,
                         const std::vector<int>& order) {
  return Writer(graph, order).run();
}

std::string write_smiles(const MoleculeGraph& graph) {
  std::vector<int> order(graph.atom_count());
  std::iota(order.begin(), order.end(), 0);
  return write_smiles(graph, order);
}

}  // namespace molforge
