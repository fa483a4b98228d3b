//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace molforge {

namespace {

constexpr std::array<std::string_view, 118> kElementSymbols = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

// Elements that may carry the aromatic (lowercase) flag inside brackets.
constexpr std::array<std::string_view, 8> kAromaticElements = {
    "B", "C", "N", "O", "P", "S", "Se", "As"};

bool contains(const auto& range, std::string_view symbol) {
  return std::find(range.begin(), range.end(), symbol) != range.end();
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t offset,
                       const std::string& what)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
      kind_(kind),
      offset_(offset) {}

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::EmptyInput: return "EmptyInput";
    case ParseErrorKind::UnknownElement: return "UnknownElement";
    case ParseErrorKind::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case ParseErrorKind::UnmatchedRingClosure: return "UnmatchedRingClosure";
    case ParseErrorKind::ValenceViolation: return "ValenceViolation";
    case ParseErrorKind::DuplicateBond: return "DuplicateBond";
    case ParseErrorKind::Syntax: return "Syntax";
  }
  return "Unknown";
}

bool is_organic_subset(std::string_view symbol) {
  static const std::array<std::string_view, 10> kOrganic = {
      "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"};
  return contains(kOrganic, symbol);
}

bool is_known_element(std::string_view symbol) {
  return contains(kElementSymbols, symbol);
}

std::vector<int> allowed_valences(std::string_view symbol, int charge) {
  std::vector<int> base;
  if (symbol == "B") {
    base = {3};
  } else if (symbol == "C") {
    base = {4};
  } else if (symbol == "N") {
    base = {3, 5};
  } else if (symbol == "O") {
    base = {2};
  } else if (symbol == "P") {
    base = {3, 5};
  } else if (symbol == "S") {
    base = {2, 4, 6};
  } else if (symbol == "F" || symbol == "Cl" || symbol == "Br" ||
             symbol == "I") {
    base = {1};
  } else {
    return {};  // outside the table: unchecked
  }

  if (charge == 0) return base;

  // Charge adjustment: group 15-17 elements gain/lose one bonding slot per
  // unit of charge; carbon loses one either way; boron anions gain.
  std::vector<int> shifted;
  if (symbol == "C") {
    shifted.push_back(4 - std::abs(charge));
  } else if (symbol == "B") {
    shifted.push_back(3 - charge);
  } else {
    for (int v : base) shifted.push_back(v + charge);
  }
  std::erase_if(shifted, [](int v) { return v < 0; });
  return shifted;
}

int implicit_hydrogens(std::string_view symbol, int bond_order_sum,
                       bool aromatic) {
  const std::vector<int> allowed = allowed_valences(symbol, 0);
  if (allowed.empty()) return 0;
  const int conn = bond_order_sum + (aromatic ? 1 : 0);
  if (aromatic) {
    // Only the lowest valence state exists for aromatic atoms; hypervalent
    // aromatics must spell their hydrogens in brackets.
    return std::max(0, allowed.front() - conn);
  }
  for (int v : allowed) {
    if (v >= conn) return v - conn;
  }
  return 0;
}

std::vector<std::vector<int>> MoleculeGraph::adjacency() const {
  std::vector<std::vector<int>> adj(atoms.size());
  for (int i = 0; i < bond_count(); ++i) {
    adj[bonds[i].a].push_back(i);
    adj[bonds[i].b].push_back(i);
  }
  return adj;
}

int MoleculeGraph::bond_between(int a, int b) const {
  for (int i = 0; i < bond_count(); ++i) {
    if ((bonds[i].a == a && bonds[i].b == b) ||
        (bonds[i].a == b && bonds[i].b == a)) {
      return i;
    }
  }
  return -1;
}

namespace {

struct PendingBond {
  bool present = false;
  BondOrder order = BondOrder::Single;
  bool explicit_single = false;  // '-' was written out
  BondDirection direction = BondDirection::None;
  std::size_t offset = 0;
};

struct RingOpening {
  int atom = -1;
  PendingBond bond;
  std::size_t offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MoleculeGraph run() {
    if (text_.empty()) {
      throw ParseError(ParseErrorKind::EmptyInput, 0, "empty SMILES input");
    }
    while (pos_ < text_.size()) {
      step();
    }
    finish();
    graph_.source_text = std::string(text_);
    return std::move(graph_);
  }

 private:
  void step() {
    const char c = text_[pos_];
    switch (c) {
      case '-': set_bond(BondOrder::Single, /*explicit_single=*/true); return;
      case '=': set_bond(BondOrder::Double); return;
      case '#': set_bond(BondOrder::Triple); return;
      case ':': set_bond(BondOrder::Aromatic); return;
      case '/': set_directional(BondDirection::Up); return;
      case '\\': set_directional(BondDirection::Down); return;
      case '(': open_branch(); return;
      case ')': close_branch(); return;
      case '.': fragment_break(); return;
      case '[': bracket_atom(); return;
      case '%': ring_closure_percent(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ring_closure(c - '0', pos_);
      ++pos_;
      return;
    }
    bare_atom();
  }

  void set_bond(BondOrder order, bool explicit_single = false) {
    if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pos_,
                       "two bond symbols in a row");
    }
    pending_ = {true, order, explicit_single, BondDirection::None, pos_};
    ++pos_;
  }

  void set_directional(BondDirection dir) {
    if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pos_,
                       "bond symbol before a directional bond");
    }
    pending_ = {true, BondOrder::Single, false, dir, pos_};
    ++pos_;
  }

  void open_branch() {
    if (prev_atom_ < 0) {
      throw ParseError(ParseErrorKind::Syntax, pos_,
                       "branch opened before any atom");
    }
    branch_stack_.push_back(prev_atom_);
    ++pos_;
  }

  void close_branch() {
    if (branch_stack_.empty()) {
      throw ParseError(ParseErrorKind::UnbalancedParenthesis, pos_,
                       "closing parenthesis without a matching open");
    }
    if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pending_.offset,
                       "dangling bond before closing parenthesis");
    }
    prev_atom_ = branch_stack_.back();
    branch_stack_.pop_back();
    ++pos_;
  }

  void fragment_break() {
    if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pending_.offset,
                       "bond symbol before fragment separator");
    }
    if (prev_atom_ < 0) {
      throw ParseError(ParseErrorKind::Syntax, pos_,
                       "fragment separator before any atom");
    }
    prev_atom_ = -1;
    ++pos_;
  }

  void bare_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];

    // Two-letter organic-subset symbols first.
    if (pos_ + 1 < text_.size()) {
      const std::string two{text_.substr(pos_, 2)};
      if (two == "Cl" || two == "Br") {
        pos_ += 2;
        add_atom(two, false, at);
        return;
      }
    }

    std::string one(1, c);
    if (is_organic_subset(one) && one != "Cl" && one != "Br") {
      ++pos_;
      add_atom(one, false, at);
      return;
    }

    static const std::string kAromaticOrganic = "bcnops";
    if (kAromaticOrganic.find(c) != std::string::npos) {
      ++pos_;
      one[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      add_atom(one, true, at);
      return;
    }

    throw ParseError(ParseErrorKind::UnknownElement, at,
                     std::string("unexpected character '") + c +
                         "' outside brackets");
  }

  void bracket_atom() {
    const std::size_t open_at = pos_;
    ++pos_;  // consume '['

    std::optional<int> isotope;
    if (pos_ < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      isotope = read_number();
    }

    if (pos_ >= text_.size()) {
      throw ParseError(ParseErrorKind::Syntax, open_at,
                       "unterminated bracket atom");
    }

    // Element symbol; leading lowercase marks an aromatic atom.
    bool aromatic = false;
    std::string symbol;
    char first = text_[pos_];
    if (std::islower(static_cast<unsigned char>(first))) {
      aromatic = true;
      first = static_cast<char>(std::toupper(static_cast<unsigned char>(first)));
    }
    symbol.push_back(first);
    ++pos_;
    if (pos_ < text_.size() &&
        std::islower(static_cast<unsigned char>(text_[pos_]))) {
      const std::string two = symbol + text_[pos_];
      // Prefer the two-letter symbol when it names a real element; this
      // keeps [se] aromatic selenium while leaving [cH3] as carbon + H.
      if (is_known_element(two)) {
        symbol = two;
        ++pos_;
      }
    }
    if (!is_known_element(symbol)) {
      throw ParseError(ParseErrorKind::UnknownElement, open_at + 1,
                       "unknown element symbol '" + symbol + "'");
    }
    if (aromatic && !contains(kAromaticElements, symbol)) {
      throw ParseError(ParseErrorKind::Syntax, open_at + 1,
                       "element '" + symbol + "' cannot be aromatic");
    }

    Chirality chirality = Chirality::None;
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      chirality = Chirality::Anticlockwise;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
        chirality = Chirality::Clockwise;
      }
    }

    int hcount = 0;
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      hcount = 1;
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        hcount = read_number();
      }
    }

    int charge = 0;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign_char = text_[pos_];
      const int sign = sign_char == '+' ? 1 : -1;
      ++pos_;
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        charge = sign * read_number();
      } else {
        charge = sign;
        while (pos_ < text_.size() && text_[pos_] == sign_char) {
          charge += sign;
          ++pos_;
        }
      }
    }

    // Atom-map class: parsed and discarded.
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError(ParseErrorKind::Syntax, pos_,
                         "atom-map class expects digits");
      }
      read_number();
    }

    if (pos_ >= text_.size() || text_[pos_] != ']') {
      throw ParseError(ParseErrorKind::Syntax, open_at,
                       "unterminated bracket atom");
    }
    ++pos_;  // consume ']'

    Atom atom;
    atom.element = symbol;
    atom.aromatic = aromatic;
    atom.charge = charge;
    atom.hcount = hcount;
    atom.isotope = isotope;
    atom.chirality = chirality;
    add_atom_record(atom, open_at, /*bracket=*/true);
  }

  int read_number() {
    int value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return value;
  }

  void add_atom(const std::string& symbol, bool aromatic, std::size_t at) {
    Atom atom;
    atom.element = symbol;
    atom.aromatic = aromatic;
    add_atom_record(atom, at, /*bracket=*/false);
  }

  void add_atom_record(const Atom& atom, std::size_t at, bool bracket) {
    const int idx = graph_.atom_count();
    graph_.atoms.push_back(atom);
    atom_offsets_.push_back(at);
    atom_is_bracket_.push_back(bracket);
    if (prev_atom_ >= 0) {
      make_bond(prev_atom_, idx, pending_, at);
    } else if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pending_.offset,
                       "bond symbol with no preceding atom");
    }
    pending_ = {};
    prev_atom_ = idx;
  }

  void make_bond(int a, int b, const PendingBond& pending, std::size_t at) {
    if (a == b) {
      throw ParseError(ParseErrorKind::DuplicateBond, at,
                       "bond endpoints must be distinct");
    }
    if (graph_.bond_between(a, b) >= 0) {
      throw ParseError(ParseErrorKind::DuplicateBond, at,
                       "duplicate bond between the same atom pair");
    }
    Bond bond;
    bond.a = a;
    bond.b = b;
    bond.direction = pending.direction;
    if (pending.present) {
      bond.order = pending.order;
    } else if (graph_.atoms[a].aromatic && graph_.atoms[b].aromatic) {
      bond.order = BondOrder::Aromatic;
    } else {
      bond.order = BondOrder::Single;
    }
    if (bond.order == BondOrder::Aromatic &&
        !(graph_.atoms[a].aromatic && graph_.atoms[b].aromatic)) {
      throw ParseError(ParseErrorKind::Syntax, at,
                       "aromatic bond between non-aromatic atoms");
    }
    graph_.bonds.push_back(bond);
  }

  void ring_closure_percent() {
    const std::size_t at = pos_;
    if (pos_ + 2 >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
      throw ParseError(ParseErrorKind::Syntax, at,
                       "%nn ring closure expects two digits");
    }
    const int id = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
    pos_ += 3;
    ring_closure(id, at);
  }

  void ring_closure(int id, std::size_t at) {
    if (prev_atom_ < 0) {
      throw ParseError(ParseErrorKind::Syntax, at,
                       "ring closure before any atom");
    }
    auto it = open_rings_.find(id);
    if (it == open_rings_.end()) {
      open_rings_[id] = RingOpening{prev_atom_, pending_, at};
      pending_ = {};
      return;
    }

    const RingOpening opening = it->second;
    open_rings_.erase(it);

    PendingBond bond = pending_;
    if (opening.bond.present && pending_.present) {
      const bool same = opening.bond.order == pending_.order &&
                        opening.bond.explicit_single == pending_.explicit_single;
      if (!same) {
        throw ParseError(ParseErrorKind::Syntax, at,
                         "conflicting bond orders on ring closure");
      }
    } else if (opening.bond.present) {
      bond = opening.bond;
    }
    pending_ = {};
    make_bond(opening.atom, prev_atom_, bond, at);
  }

  void finish() {
    if (!open_rings_.empty()) {
      // Report the earliest unmatched opening.
      std::size_t first = text_.size();
      int id = -1;
      for (const auto& [rid, opening] : open_rings_) {
        if (opening.offset < first) {
          first = opening.offset;
          id = rid;
        }
      }
      throw ParseError(ParseErrorKind::UnmatchedRingClosure, first,
                       "ring closure " + std::to_string(id) + " never closed");
    }
    if (!branch_stack_.empty()) {
      throw ParseError(ParseErrorKind::UnbalancedParenthesis, text_.size(),
                       "unclosed parenthesis");
    }
    if (pending_.present) {
      throw ParseError(ParseErrorKind::Syntax, pending_.offset,
                       "dangling bond at end of input");
    }

    assign_implicit_hydrogens();
    check_valences();
  }

  void assign_implicit_hydrogens() {
    for (int i = 0; i < graph_.atom_count(); ++i) {
      if (atom_is_bracket_[i]) continue;  // explicit count is authoritative
      int order_sum = 0;
      for (const Bond& bond : graph_.bonds) {
        if (bond.a != i && bond.b != i) continue;
        order_sum += bond.aromatic() ? 1 : static_cast<int>(bond.order);
      }
      graph_.atoms[i].hcount = implicit_hydrogens(
          graph_.atoms[i].element, order_sum, graph_.atoms[i].aromatic);
    }
  }

  void check_valences() {
    for (int i = 0; i < graph_.atom_count(); ++i) {
      const Atom& atom = graph_.atoms[i];
      const std::vector<int> allowed =
          allowed_valences(atom.element, atom.charge);
      if (allowed.empty()) continue;
      int order_sum = 0;
      for (const Bond& bond : graph_.bonds) {
        if (bond.a != i && bond.b != i) continue;
        // Aromatic bonds are counted at their sigma contribution here; the
        // exact pi assignment is checked by kekulize.
        order_sum += bond.aromatic() ? 1 : static_cast<int>(bond.order);
      }
      const int valence = order_sum + atom.hcount;
      const int max_allowed = *std::max_element(allowed.begin(), allowed.end());
      if (valence > max_allowed) {
        std::ostringstream msg;
        msg << "valence " << valence << " exceeds maximum " << max_allowed
            << " for " << atom.element;
        if (atom.charge != 0) msg << " (charge " << atom.charge << ")";
        throw ParseError(ParseErrorKind::ValenceViolation, atom_offsets_[i],
                         msg.str());
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MoleculeGraph graph_;
  std::vector<std::size_t> atom_offsets_;
  std::vector<bool> atom_is_bracket_;
  int prev_atom_ = -1;
  PendingBond pending_;
  std::vector<int> branch_stack_;
  std::map<int, RingOpening> open_rings_;
};

}  // namespace

MoleculeGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

bool is_valid_smiles(std::string_view text) {
  try {
    parse_smiles(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace molforge
