//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// Embedded copy of data/structural_keys.txt; a unit test keeps the two in
// sync.

#include "molforge/fingerprints.hpp"

namespace molforge {

const std::string& default_structural_keys_text() {
  static const std::string text = R"KEYS(# molforge structural keys v1
# One key per line: id<TAB>descriptor<TAB>label
# Descriptors:
#   element:X    at least one atom of element X
#   count:X:n    at least n atoms of element X
#   ring:n       a smallest ring of size n exists
#   aromatic-ring  any aromatic bond present
#   charge:pos / charge:neg   atom with positive / negative formal charge
#   isotope      any isotope-labelled atom
#   path:P       linear chain pattern; atoms are element symbols
#                (lowercase = aromatic required), optional h<n> minimum
#                hydrogen count, optional '+' positive charge; bonds are
#                - = # : and ~ (any)
1	element:C	carbon present
2	element:N	nitrogen present
3	element:O	oxygen present
4	element:S	sulfur present
5	element:P	phosphorus present
6	element:F	fluorine present
7	element:Cl	chlorine present
8	element:Br	bromine present
9	element:I	iodine present
10	element:B	boron present
11	element:Na	sodium present
12	count:C:8	at least 8 carbons
13	count:C:16	at least 16 carbons
14	count:O:3	at least 3 oxygens
15	count:O:5	at least 5 oxygens
16	count:N:2	at least 2 nitrogens
17	ring:3	three-membered ring
18	ring:4	four-membered ring
19	ring:5	five-membered ring
20	ring:6	six-membered ring
21	ring:7	seven-membered ring
22	ring:8	eight-membered ring
23	aromatic-ring	aromatic ring present
24	charge:pos	cationic site
25	charge:neg	anionic site
26	isotope	isotope label
27	path:C=O	carbonyl
28	path:O=C-Oh1	carboxylic acid
29	path:O=C-O-C	ester linkage
30	path:O=C-O-C=O	anhydride
31	path:O=C-N	amide
32	path:Nh2	primary amine
33	path:C-Nh1-C	secondary amine
34	path:C-N-C	amine chain
35	path:Oh1	hydroxyl
36	path:C-O-C	ether
37	path:C#N	nitrile
38	path:C=C	alkene
39	path:C#C	alkyne
40	path:Sh1	thiol
41	path:C-S-C	thioether
42	path:O=S=O	sulfonyl
43	path:O=N-O	nitro (charge-separated form)
44	path:O=N=O	nitro (neutral form)
45	path:C-F	carbon-fluorine bond
46	path:C-Cl	carbon-chlorine bond
47	path:C-Br	carbon-bromine bond
48	path:C-I	carbon-iodine bond
49	path:c:n	azine/azole nitrogen
50	path:c:o	furan-type oxygen
51	path:c:s	thiophene-type sulfur
52	path:c-Oh1	phenol
53	path:c-N	arylamine
54	path:c-C=O	aryl carbonyl
55	path:C=N	imine
56	path:C=S	thiocarbonyl
57	path:P=O	phosphoryl
58	path:O-P-O	phosphodiester linkage
59	path:N-C-N	aminal/guanidine backbone
60	path:O-C-O	acetal backbone
61	path:C=C-C=O	conjugated enone
62	path:Oh1-C-C=O	alpha-hydroxy carbonyl
63	path:C-N+	quaternary/protonated nitrogen
)KEYS";
  return text;
}

}  // namespace molforge
