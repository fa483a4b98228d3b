//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: SMILES transforms,
// fingerprints, BM25 retrieval, perplexity, and the metric suite.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "molforge/evaluation.hpp"
#include "molforge/fingerprints.hpp"
#include "molforge/gateway.hpp"
#include "molforge/retrieval.hpp"
#include "molforge/smiles.hpp"
#include "molforge/text.hpp"

namespace py = pybind11;
using namespace molforge;

namespace {

FingerprintKind kind_from_name(const std::string& name) {
  if (name == "morgan") return FingerprintKind::Morgan;
  if (name == "path" || name == "rdk") return FingerprintKind::Path;
  if (name == "keys" || name == "maccs") return FingerprintKind::Keys;
  throw std::invalid_argument("unknown fingerprint kind: " + name);
}

Fingerprint fingerprint_by_kind(const std::string& smiles,
                                const std::string& kind) {
  const MoleculeGraph mol = parse_smiles(smiles);
  switch (kind_from_name(kind)) {
    case FingerprintKind::Morgan: return morgan_fingerprint(mol, 2, 2048);
    case FingerprintKind::Path: return path_fingerprint(mol, 7, 2048);
    case FingerprintKind::Keys: return structural_keys(mol);
  }
  return morgan_fingerprint(mol, 2, 2048);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "molecule-caption alignment toolchain core";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const KekulizeError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const KindMismatch& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const LengthMismatch& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const EmptyCorpus& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // --- SMILES core ------------------------------------------------------
  m.def(
      "canonicalize",
      [](const std::string& smiles) {
        return canonicalize(parse_smiles(smiles)).text;
      },
      py::arg("smiles"),
      "Canonical SMILES, stable under atom and ring-closure renumbering.");
  m.def("is_valid", &is_valid_smiles, py::arg("smiles"),
        "True when the SMILES parses with valid valences.");
  m.def(
      "add_explicit_hydrogens",
      [](const std::string& smiles) {
        return write_smiles(add_explicit_hydrogens(parse_smiles(smiles)));
      },
      py::arg("smiles"));
  m.def(
      "kekulize",
      [](const std::string& smiles) {
        return write_smiles(kekulize(parse_smiles(smiles)));
      },
      py::arg("smiles"));
  m.def(
      "renumber_ring_closures",
      [](const std::string& smiles, std::uint64_t seed) {
        return renumber_ring_closures(smiles, seed);
      },
      py::arg("smiles"), py::arg("seed"));
  m.def(
      "graph_isomorphic",
      [](const std::string& a, const std::string& b) {
        return graph_isomorphic(parse_smiles(a), parse_smiles(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "parse_info",
      [](const std::string& smiles) {
        const MoleculeGraph mol = parse_smiles(smiles);
        py::list atoms;
        for (const Atom& atom : mol.atoms) {
          py::dict entry;
          entry["element"] = atom.element;
          entry["charge"] = atom.charge;
          entry["hcount"] = atom.hcount;
          entry["aromatic"] = atom.aromatic;
          if (atom.isotope) entry["isotope"] = *atom.isotope;
          atoms.append(entry);
        }
        py::list bonds;
        for (const Bond& bond : mol.bonds) {
          py::dict entry;
          entry["a"] = bond.a;
          entry["b"] = bond.b;
          entry["order"] = bond.aromatic()
                               ? py::cast("aromatic")
                               : py::cast(static_cast<int>(bond.order));
          bonds.append(entry);
        }
        py::dict out;
        out["atoms"] = atoms;
        out["bonds"] = bonds;
        return out;
      },
      py::arg("smiles"), "Atom and bond table of the parsed molecule.");

  // --- fingerprints -----------------------------------------------------
  m.def(
      "fingerprint_bits",
      [](const std::string& smiles, const std::string& kind) {
        return fingerprint_by_kind(smiles, kind).set_bits();
      },
      py::arg("smiles"), py::arg("kind") = "morgan",
      "Set-bit indices; kind is morgan, path/rdk, or keys/maccs.");
  m.def(
      "tanimoto",
      [](const std::string& a, const std::string& b, const std::string& kind) {
        return tanimoto(fingerprint_by_kind(a, kind),
                        fingerprint_by_kind(b, kind));
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "morgan");

  // --- retrieval ---------------------------------------------------------
  py::class_<RetrievalIndex>(m, "BM25Index")
      .def(py::init([](const std::map<std::string, std::string>& corpus) {
             return build_bm25_index(corpus);
           }),
           py::arg("corpus"))
      .def_property_readonly("doc_count", &RetrievalIndex::doc_count)
      .def_property_readonly(
          "avg_doc_length",
          [](const RetrievalIndex& index) { return index.avg_doc_length; })
      .def(
          "query",
          [](const RetrievalIndex& index, const std::string& text, int k,
             const std::optional<std::string>& exclude) {
            std::vector<std::pair<std::string, double>> out;
            for (const ScoredDoc& doc : bm25_query(index, text, k, exclude)) {
              out.emplace_back(doc.id, doc.score);
            }
            return out;
          },
          py::arg("text"), py::arg("k") = 10,
          py::arg("exclude") = std::nullopt);

  m.def("tokenize_caption", &tokenize_caption, py::arg("text"));

  // --- gateway math -------------------------------------------------------
  m.def(
      "perplexity",
      [](const std::vector<double>& logprobs) {
        ScoredText scored;
        scored.logprobs = logprobs;
        return perplexity(scored);
      },
      py::arg("logprobs"),
      "exp(-(1/N) * sum(logprobs)); logprobs are natural logs.");

  // --- metrics -------------------------------------------------------------
  m.def("bleu", &bleu, py::arg("references"), py::arg("hypotheses"),
        py::arg("max_n") = 4);
  m.def(
      "rouge",
      [](const std::vector<std::string>& refs,
         const std::vector<std::string>& hyps, const std::string& variant) {
        if (variant == "1") return rouge(refs, hyps, RougeVariant::Rouge1);
        if (variant == "2") return rouge(refs, hyps, RougeVariant::Rouge2);
        if (variant == "L" || variant == "l") {
          return rouge(refs, hyps, RougeVariant::RougeL);
        }
        throw std::invalid_argument("rouge variant must be 1, 2, or L");
      },
      py::arg("references"), py::arg("hypotheses"), py::arg("variant") = "L");
  m.def("meteor", &meteor, py::arg("references"), py::arg("hypotheses"));
  m.def("levenshtein", &levenshtein, py::arg("a"), py::arg("b"));
  m.def("exact_match", &exact_match, py::arg("references"),
        py::arg("hypotheses"));
  m.def(
      "fingerprint_fts",
      [](const std::vector<std::string>& refs,
         const std::vector<std::string>& hyps, const std::string& kind) {
        return fingerprint_fts(refs, hyps, kind_from_name(kind));
      },
      py::arg("references"), py::arg("hypotheses"),
      py::arg("kind") = "morgan");
  m.def("validity", &validity, py::arg("hypotheses"));

  // --- probes ---------------------------------------------------------------
  m.def(
      "probe_smiles",
      [](const std::string& smiles, const std::string& kind,
         std::uint64_t seed) {
        const std::vector<DatasetItem> one = {{"x", smiles, ""}};
        return probe_testset(one, probe_from_string(kind), seed)[0].smiles;
      },
      py::arg("smiles"), py::arg("kind"), py::arg("seed") = 0,
      "Equivalent-SMILES transform: canonical, hydrogen, kekulization, "
      "or cycles.");

#ifdef MOLFORGE_VERSION
  m.attr("__version__") = MOLFORGE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
