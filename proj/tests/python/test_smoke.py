# Copyright (C) 2026 MolForge Developers
# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings."""

import math

import pytest

import molforge


def test_canonicalize_same_molecule():
    assert molforge.canonicalize("OCC") == molforge.canonicalize("CCO")
    assert molforge.canonicalize("C(C)O") == molforge.canonicalize("CCO")
    assert molforge.canonicalize("CCO") != molforge.canonicalize("CCN")


def test_canonicalize_idempotent():
    canon = molforge.canonicalize("c1ccc2ccccc2c1")
    assert molforge.canonicalize(canon) == canon


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        molforge.canonicalize("C1CC")
    with pytest.raises(ValueError):
        molforge.kekulize("c1ccc1")
    assert not molforge.is_valid("C1CC")
    assert molforge.is_valid("CCO")


def test_parse_info():
    info = molforge.parse_info("CC(=O)O")
    assert len(info["atoms"]) == 4
    assert [a["element"] for a in info["atoms"]] == ["C", "C", "O", "O"]
    orders = sorted(b["order"] for b in info["bonds"])
    assert orders == [1, 1, 2]


def test_transforms():
    expanded = molforge.add_explicit_hydrogens("C")
    assert molforge.parse_info(expanded)["atoms"][0]["element"] == "C"
    assert len(molforge.parse_info(expanded)["atoms"]) == 5

    kek = molforge.kekulize("c1ccccc1")
    assert "c" not in kek

    a = molforge.renumber_ring_closures("C1CCCCC1", 42)
    b = molforge.renumber_ring_closures("C1CCCCC1", 42)
    assert a == b
    assert molforge.graph_isomorphic(a, "C1CCCCC1")


def test_fingerprints_and_tanimoto():
    assert molforge.tanimoto("CCO", "OCC", "morgan") == 1.0
    assert 0.0 < molforge.tanimoto("CCO", "CCCO", "path") < 1.0
    bits = molforge.fingerprint_bits("CCO", "morgan")
    assert len(bits) > 0
    with pytest.raises(ValueError):
        molforge.tanimoto("CCO", "C1CC", "morgan")


def test_bm25_index():
    index = molforge.BM25Index(
        {
            "d1": "a fatty acid chain",
            "d2": "an aromatic ring",
            "d3": "a sugar with hydroxyl groups",
        }
    )
    assert index.doc_count == 3
    hits = index.query("aromatic ring", k=2)
    assert hits[0][0] == "d2"
    excluded = index.query("fatty acid", k=3, exclude="d1")
    assert all(doc_id != "d1" for doc_id, _ in excluded)


def test_metrics():
    refs = ["the cat sat on the soft mat"]
    assert molforge.bleu(refs, refs, 4) == pytest.approx(1.0)
    assert molforge.rouge(["a b c d"], ["a c d"], "L") == pytest.approx(6 / 7)
    assert molforge.meteor(refs, refs) >= 0.99
    assert molforge.levenshtein("kitten", "sitting") == 3
    assert molforge.exact_match(["CCO"], ["OCC"]) == 1.0
    assert molforge.validity(["CCO", "C1CC"]) == 0.5
    assert molforge.fingerprint_fts(["CCO"], ["CCO"], "maccs") == 1.0


def test_perplexity():
    assert molforge.perplexity([math.log(0.25)] * 4) == pytest.approx(4.0)
    assert molforge.perplexity([0.0, 0.0]) == pytest.approx(1.0)


def test_probe_smiles():
    assert molforge.probe_smiles("OCC", "canonical") == molforge.canonicalize(
        "CCO"
    )
    hydrogenated = molforge.probe_smiles("C", "hydrogen")
    assert sum(
        a["element"] == "H" for a in molforge.parse_info(hydrogenated)["atoms"]
    ) == 4
    first = molforge.probe_smiles("C1CCCCC1", "cycles", seed=9)
    second = molforge.probe_smiles("C1CCCCC1", "cycles", seed=9)
    assert first == second


def test_tokenizer():
    assert molforge.tokenize_caption("It is a fatty acid.") == [
        "it",
        "is",
        "a",
        "fatty",
        "acid",
    ]
    assert molforge.tokenize_caption("beta-D-glucose") == ["beta-d-glucose"]
