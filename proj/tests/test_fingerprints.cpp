//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "molforge/fingerprints.hpp"
#include "molforge/smiles.hpp"
#include "support/molgen.hpp"

using namespace molforge;
using molforge::testing::build_corpus;
using molforge::testing::random_permutation;

TEST_CASE("morgan: radius-0 environments of ethanol") {
  // Hand enumeration: terminal C (3H, degree 1), central C (2H, degree 2),
  // O (1H, degree 1) are the three distinct environments.
  const Fingerprint fp = morgan_fingerprint(parse_smiles("CCO"), 0, 2048);
  CHECK(fp.count() == 3);
}

TEST_CASE("morgan: higher radius accumulates bits") {
  for (const std::string& smiles :
       {std::string("CCO"), std::string("c1ccccc1O"),
        std::string("CC(C)Cc1ccc(cc1)C(C)C(=O)O")}) {
    const MoleculeGraph mol = parse_smiles(smiles);
    const Fingerprint r0 = morgan_fingerprint(mol, 0, 2048);
    const Fingerprint r1 = morgan_fingerprint(mol, 1, 2048);
    const Fingerprint r2 = morgan_fingerprint(mol, 2, 2048);
    for (int bit : r0.set_bits()) CHECK(r1.test(bit));
    for (int bit : r1.set_bits()) {
      // params differ (radius), so compare raw bits
      const bool present = (r2.blocks[bit / 64] >> (bit % 64)) & 1;
      CHECK(present);
    }
  }
}

TEST_CASE("morgan: parameter validation") {
  const MoleculeGraph mol = parse_smiles("CC");
  CHECK_THROWS_AS(morgan_fingerprint(mol, -1, 2048), std::invalid_argument);
  CHECK_THROWS_AS(morgan_fingerprint(mol, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(morgan_fingerprint(mol, 2, 32), std::invalid_argument);
}

TEST_CASE("path: atom without bonds has an empty bit set") {
  CHECK(path_fingerprint(parse_smiles("C"), 7, 2048).count() == 0);
}

TEST_CASE("path: exhaustive enumeration oracle for CCO") {
  // Paths up to length 2: C-C, C-O, C-C-O -> three distinct strings.
  const Fingerprint fp = path_fingerprint(parse_smiles("CCO"), 2, 2048);
  CHECK(fp.count() == 3);

  // Length 1 only: C-C and C-O.
  const Fingerprint fp1 = path_fingerprint(parse_smiles("CCO"), 1, 2048);
  CHECK(fp1.count() == 2);
}

TEST_CASE("path: subset relation gives tanimoto below one") {
  const Fingerprint a = path_fingerprint(parse_smiles("CCO"), 7, 2048);
  const Fingerprint b = path_fingerprint(parse_smiles("CCCO"), 7, 2048);
  const double t = tanimoto(a, b);
  CHECK(t > 0.0);
  CHECK(t < 1.0);
}

TEST_CASE("structural keys: element and ring membership") {
  const auto& keys = default_structural_keys();
  auto key_index = [&](const std::string& descriptor) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].descriptor == descriptor) return static_cast<int>(i);
    }
    FAIL("missing key: " << descriptor);
    return -1;
  };

  const Fingerprint ethanol = structural_keys(parse_smiles("CCO"));
  CHECK(ethanol.test(key_index("element:O")));
  CHECK_FALSE(ethanol.test(key_index("element:N")));
  CHECK(ethanol.test(key_index("path:Oh1")));
  CHECK_FALSE(ethanol.test(key_index("ring:6")));

  const Fingerprint cyclohexane = structural_keys(parse_smiles("C1CCCCC1"));
  CHECK(cyclohexane.test(key_index("ring:6")));
  CHECK_FALSE(cyclohexane.test(key_index("ring:5")));

  // Anhydride and carbonyl on dodecanoyl dodecanoate.
  const Fingerprint anhydride = structural_keys(
      parse_smiles("CCCCCCCCCCCC(=O)OC(=O)CCCCCCCCCCC"));
  CHECK(anhydride.test(key_index("path:C=O")));
  CHECK(anhydride.test(key_index("path:O=C-O-C=O")));
  CHECK(anhydride.test(key_index("count:C:16")));

  const Fingerprint acid = structural_keys(parse_smiles("CC(=O)O"));
  CHECK(acid.test(key_index("path:O=C-Oh1")));
  CHECK_FALSE(acid.test(key_index("path:O=C-O-C=O")));

  const Fingerprint aromatic = structural_keys(parse_smiles("c1ccncc1"));
  CHECK(aromatic.test(key_index("aromatic-ring")));
  CHECK(aromatic.test(key_index("path:c:n")));
  CHECK_FALSE(aromatic.test(key_index("path:c:o")));

  const Fingerprint charged = structural_keys(parse_smiles("C[N+](C)(C)C"));
  CHECK(charged.test(key_index("charge:pos")));
  CHECK(charged.test(key_index("path:C-N+")));
}

TEST_CASE("structural keys: embedded copy matches the data file") {
  std::ifstream in(std::string(MOLFORGE_SOURCE_DIR) +
                   "/data/structural_keys.txt");
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == default_structural_keys_text());
  CHECK(default_structural_keys().size() == 63);
}

TEST_CASE("tanimoto: identities and set arithmetic") {
  const Fingerprint a = morgan_fingerprint(parse_smiles("CCO"), 2, 2048);
  CHECK(tanimoto(a, a) == 1.0);

  // a={1,2,3}, b={2,3,4} -> 2/4.
  Fingerprint x = a, y = a;
  x.blocks.assign(x.blocks.size(), 0);
  y.blocks.assign(y.blocks.size(), 0);
  x.set(1); x.set(2); x.set(3);
  y.set(2); y.set(3); y.set(4);
  CHECK(tanimoto(x, y) == 0.5);

  // Disjoint non-empty -> 0; both empty -> 1.
  Fingerprint d1 = x, d2 = x;
  d1.blocks.assign(d1.blocks.size(), 0);
  d2.blocks.assign(d2.blocks.size(), 0);
  d1.set(7);
  d2.set(9);
  CHECK(tanimoto(d1, d2) == 0.0);
  d1.blocks.assign(d1.blocks.size(), 0);
  d2.blocks.assign(d2.blocks.size(), 0);
  CHECK(tanimoto(d1, d2) == 1.0);
}

TEST_CASE("tanimoto: kind and parameter mismatches are rejected") {
  const MoleculeGraph mol = parse_smiles("CCO");
  const Fingerprint morgan = morgan_fingerprint(mol, 2, 2048);
  const Fingerprint path = path_fingerprint(mol, 7, 2048);
  const Fingerprint morgan_r3 = morgan_fingerprint(mol, 3, 2048);
  const Fingerprint morgan_small = morgan_fingerprint(mol, 2, 1024);
  CHECK_THROWS_AS(tanimoto(morgan, path), KindMismatch);
  CHECK_THROWS_AS(tanimoto(morgan, morgan_r3), KindMismatch);
  CHECK_THROWS_AS(tanimoto(morgan, morgan_small), KindMismatch);
}

TEST_CASE("tanimoto: symmetry and range on random pairs") {
  std::mt19937_64 rng(5150);
  const auto corpus = build_corpus(60, 31337);
  std::vector<Fingerprint> fps;
  for (const std::string& smiles : corpus) {
    fps.push_back(morgan_fingerprint(parse_smiles(smiles), 2, 2048));
  }
  for (int trial = 0; trial < 300; ++trial) {
    const auto& a = fps[rng() % fps.size()];
    const auto& b = fps[rng() % fps.size()];
    const double ab = tanimoto(a, b);
    const double ba = tanimoto(b, a);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("fingerprints: invariant under graph relabeling") {
  std::mt19937_64 rng(777);
  const auto corpus = build_corpus(40, 909090);
  for (const std::string& smiles : corpus) {
    const MoleculeGraph mol = parse_smiles(smiles);
    const Fingerprint morgan = morgan_fingerprint(mol, 2, 2048);
    const Fingerprint path = path_fingerprint(mol, 5, 2048);
    const Fingerprint keys = structural_keys(mol);
    for (int trial = 0; trial < 3; ++trial) {
      const auto order = random_permutation(mol.atom_count(), rng);
      const MoleculeGraph relabeled = parse_smiles(write_smiles(mol, order));
      CHECK(tanimoto(morgan, morgan_fingerprint(relabeled, 2, 2048)) == 1.0);
      CHECK(tanimoto(path, path_fingerprint(relabeled, 5, 2048)) == 1.0);
      CHECK(tanimoto(keys, structural_keys(relabeled)) == 1.0);
    }
  }
}
