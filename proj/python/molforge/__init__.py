# Copyright (C) 2026 MolForge Developers
# SPDX-License-Identifier: Apache-2.0
"""Python surface of the molecule-caption alignment toolchain.

Everything here is backed by the C++ core: SMILES parsing and
canonicalization, fingerprints and Tanimoto similarity, BM25 retrieval,
perplexity, the Mol2Cap/Cap2Mol metric suites, and the equivalent-SMILES
probe transforms.
"""

from ._core import (  # noqa: F401
    BM25Index,
    __version__,
    add_explicit_hydrogens,
    bleu,
    canonicalize,
    exact_match,
    fingerprint_bits,
    fingerprint_fts,
    graph_isomorphic,
    is_valid,
    kekulize,
    levenshtein,
    meteor,
    parse_info,
    perplexity,
    probe_smiles,
    renumber_ring_closures,
    rouge,
    tanimoto,
    tokenize_caption,
    validity,
)

__all__ = [
    "BM25Index",
    "add_explicit_hydrogens",
    "bleu",
    "canonicalize",
    "exact_match",
    "fingerprint_bits",
    "fingerprint_fts",
    "graph_isomorphic",
    "is_valid",
    "kekulize",
    "levenshtein",
    "meteor",
    "parse_info",
    "perplexity",
    "probe_smiles",
    "renumber_ring_closures",
    "rouge",
    "tanimoto",
    "tokenize_caption",
    "validity",
]
