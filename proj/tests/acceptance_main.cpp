//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "molforge/alignment.hpp"
#include "molforge/emitter.hpp"
#include "molforge/evaluation.hpp"
#include "molforge/fingerprints.hpp"
#include "molforge/jsonl.hpp"
#include "molforge/runner.hpp"
#include "molforge/smiles.hpp"
#include "molforge/text.hpp"
#include "support/mock_llm.hpp"
#include "support/molgen.hpp"
#include "support/oracles.hpp"

using namespace molforge;
namespace mft = molforge::testing;

namespace {

int failures = 0;

// Runs one criterion; prints a single line with its wall time.
void criterion(const std::string& name, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  } catch (...) {
    error = "unknown exception";
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (error.empty()) {
    std::printf("[PASS] %-28s (%lld ms)\n", name.c_str(),
                static_cast<long long>(elapsed));
  } else {
    ++failures;
    std::printf("[FAIL] %-28s (%lld ms): %s\n", name.c_str(),
                static_cast<long long>(elapsed), error.c_str());
  }
  std::fflush(stdout);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

void require_close(double got, double want, double tol,
                   const std::string& what) {
  if (std::abs(got - want) > tol) {
    std::ostringstream msg;
    msg << what << ": got " << got << ", want " << want << " (tol " << tol
        << ")";
    throw std::runtime_error(msg.str());
  }
}

// --- criterion 1: SMILES round-trip --------------------------------------

void smiles_round_trip() {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = mft::build_corpus(1000, 99);
  require(std::find(corpus.begin(), corpus.end(),
                    "CCCCCCCCCCCC(=O)OC(=O)CCCCCCCCCCC") != corpus.end(),
          "corpus must contain dodecanoyl dodecanoate");

  std::mt19937_64 rng(4242);
  for (const std::string& smiles : corpus) {
    const MoleculeGraph mol = parse_smiles(smiles);
    const auto order = mft::random_permutation(mol.atom_count(), rng);
    const MoleculeGraph round = parse_smiles(write_smiles(mol, order));
    require(graph_isomorphic(mol, round),
            "round trip broke isomorphism for " + smiles);

    const CanonicalSmiles canon = canonicalize(mol);
    for (int trial = 0; trial < 10; ++trial) {
      const auto relabel = mft::random_permutation(mol.atom_count(), rng);
      const MoleculeGraph shuffled =
          parse_smiles(write_smiles(mol, relabel));
      require(canonicalize(shuffled).text == canon.text,
              "canonical form changed under relabeling for " + smiles);
    }
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  require(elapsed < 30, "round-trip corpus exceeded the 30 s budget (" +
                            std::to_string(elapsed) + " s)");
}

// --- criterion 2: probe soundness -----------------------------------------

void probe_soundness() {
  const auto corpus = mft::build_corpus(500, 77);
  std::vector<DatasetItem> testset;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    testset.push_back(
        {"p" + std::to_string(i), corpus[i], "caption " + std::to_string(i)});
  }

  const auto canonical = probe_testset(testset, ProbeKind::Canonical, 5);
  const auto canonical2 = probe_testset(canonical, ProbeKind::Canonical, 6);
  const auto hydrogen = probe_testset(testset, ProbeKind::Hydrogen, 5);
  const auto kekulized = probe_testset(testset, ProbeKind::Kekulization, 5);
  const auto cycles_a = probe_testset(testset, ProbeKind::Cycles, 123);
  const auto cycles_b = probe_testset(testset, ProbeKind::Cycles, 123);

  for (std::size_t i = 0; i < testset.size(); ++i) {
    const MoleculeGraph source = parse_smiles(testset[i].smiles);
    require(testset[i].caption == canonical[i].caption,
            "probe must not touch captions");

    require(graph_isomorphic(source, parse_smiles(canonical[i].smiles)),
            "canonical probe broke isomorphism for " + testset[i].smiles);
    require(canonical[i].smiles == canonical2[i].smiles,
            "canonical probe is not idempotent for " + testset[i].smiles);

    const MoleculeGraph h_expanded = parse_smiles(hydrogen[i].smiles);
    require(graph_isomorphic(collapse_explicit_hydrogens(h_expanded), source),
            "hydrogen probe broke heavy-atom isomorphism for " +
                testset[i].smiles);

    const MoleculeGraph kek = parse_smiles(kekulized[i].smiles);
    for (const Bond& bond : kek.bonds) {
      require(!bond.aromatic(), "kekulized output kept an aromatic bond");
    }
    require(skeleton_isomorphic(source, kek),
            "kekulize probe broke the heavy-atom skeleton for " +
                testset[i].smiles);

    require(cycles_a[i].smiles == cycles_b[i].smiles,
            "cycles probe is not seed-deterministic");
    require(graph_isomorphic(source, parse_smiles(cycles_a[i].smiles)),
            "cycles probe broke isomorphism for " + testset[i].smiles);
  }
}

// --- criterion 3: metric oracles ------------------------------------------

void metric_oracles() {
  std::mt19937_64 rng(31415);
  const std::vector<std::string> vocab = {
      "acid",  "ester", "ring",  "aromatic", "hydroxyl", "amine",
      "fatty", "chain", "sugar", "salt",     "methyl",   "group"};
  auto sentence = [&](int max_tokens) {
    const int len = 1 + static_cast<int>(rng() % max_tokens);
    std::string text;
    for (int w = 0; w < len; ++w) {
      if (w > 0) text += ' ';
      text += vocab[rng() % vocab.size()];
    }
    return text;
  };

  // 200 random toy pairs for BLEU and ROUGE.
  for (int trial = 0; trial < 200; ++trial) {
    const std::string ref = sentence(12);
    const std::string hyp = sentence(12);
    const auto ref_tokens = tokenize_caption(ref);
    const auto hyp_tokens = tokenize_caption(hyp);

    for (int max_n : {2, 4}) {
      require_close(bleu({ref}, {hyp}, max_n),
                    mft::brute_force_bleu({ref_tokens}, {hyp_tokens}, max_n),
                    1e-9, "BLEU-" + std::to_string(max_n));
    }
    require_close(rouge({ref}, {hyp}, RougeVariant::Rouge1),
                  mft::brute_force_rouge_n(ref_tokens, hyp_tokens, 1), 1e-9,
                  "ROUGE-1");
    require_close(rouge({ref}, {hyp}, RougeVariant::Rouge2),
                  mft::brute_force_rouge_n(ref_tokens, hyp_tokens, 2), 1e-9,
                  "ROUGE-2");
    require_close(rouge({ref}, {hyp}, RougeVariant::RougeL),
                  mft::brute_force_rouge_l(ref_tokens, hyp_tokens), 1e-9,
                  "ROUGE-L");
  }

  // 200 random short strings for the exhaustive Levenshtein oracle.
  const std::string alphabet = "CNO()=c1";
  for (int trial = 0; trial < 200; ++trial) {
    std::string a, b;
    const int la = static_cast<int>(rng() % 9);
    const int lb = static_cast<int>(rng() % 9);
    for (int i = 0; i < la; ++i) a += alphabet[rng() % alphabet.size()];
    for (int i = 0; i < lb; ++i) b += alphabet[rng() % alphabet.size()];
    require(levenshtein(a, b) == mft::exhaustive_levenshtein(a, b),
            "levenshtein mismatch on '" + a + "' vs '" + b + "'");
  }

  // METEOR against the hand-evaluated formula on ten constructed pairs.
  struct Pair {
    const char* ref;
    const char* hyp;
    int m;
    int chunks;
  };
  const std::vector<Pair> pairs = {
      {"alpha beta gamma delta epsilon zeta eta theta iota kappa",
       "alpha beta gamma delta epsilon zeta eta theta iota kappa", 10, 1},
      {"alpha beta gamma delta", "alpha beta gamma delta", 4, 1},
      {"alpha beta gamma delta", "delta gamma beta alpha", 4, 4},
      {"alpha beta gamma delta epsilon", "alpha beta delta epsilon", 4, 2},
      {"the acid is strong", "the acids are strong", 3, 2},
      {"zero one two three", "one two", 2, 1},
      {"aa bb", "cc dd", 0, 0},
      {"alpha", "alpha", 1, 1},
      {"alpha beta", "beta alpha", 2, 2},
      {"acid", "acids", 1, 1},
  };
  for (const Pair& pair : pairs) {
    const auto ref = tokenize_caption(pair.ref);
    const auto hyp = tokenize_caption(pair.hyp);
    double expected = 0.0;
    if (pair.m > 0) {
      const double precision = static_cast<double>(pair.m) / hyp.size();
      const double recall = static_cast<double>(pair.m) / ref.size();
      const double f_mean =
          10.0 * precision * recall / (recall + 9.0 * precision);
      const double frag = static_cast<double>(pair.chunks) / pair.m;
      expected = f_mean * (1.0 - 0.5 * frag * frag * frag);
    }
    require_close(meteor_pair(ref, hyp), expected, 1e-9,
                  std::string("METEOR '") + pair.hyp + "'");
  }
}

// --- criterion 4: BM25 equivalence ------------------------------------------

void bm25_equivalence() {
  std::mt19937_64 rng(271828);
  const std::vector<std::string> vocab = {
      "acid",  "ester", "ring",   "aromatic", "hydroxyl", "amine", "fatty",
      "chain", "sugar", "methyl", "chloro",   "phenyl",   "oxo",   "amide"};

  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, std::string> corpus;
    const int docs = 5 + static_cast<int>(rng() % 16);
    for (int d = 0; d < docs; ++d) {
      std::string text;
      const int len = 2 + static_cast<int>(rng() % 12);
      for (int w = 0; w < len; ++w) {
        if (w > 0) text += ' ';
        text += vocab[rng() % vocab.size()];
      }
      corpus["doc" + std::to_string(d)] = text;
    }
    std::string query;
    const int qlen = 1 + static_cast<int>(rng() % 5);
    for (int w = 0; w < qlen; ++w) {
      if (w > 0) query += ' ';
      query += vocab[rng() % vocab.size()];
    }

    const RetrievalIndex index = build_bm25_index(corpus);
    const auto expected = mft::brute_force_bm25(corpus, query, 1.5, 0.75);
    const auto ranked = bm25_query(index, query, docs);
    require(ranked.size() == corpus.size(), "bm25 returned a short list");
    for (const auto& hit : ranked) {
      require_close(hit.score, expected.at(hit.id), 1e-9,
                    "bm25 score for " + hit.id);
    }
    std::vector<ScoredDoc> oracle_ranked;
    for (const auto& [id, score] : expected) {
      oracle_ranked.push_back({id, score});
    }
    std::sort(oracle_ranked.begin(), oracle_ranked.end(),
              [](const ScoredDoc& a, const ScoredDoc& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.id < b.id;
              });
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      require(ranked[i].id == oracle_ranked[i].id,
              "bm25 ranking diverged from the oracle at position " +
                  std::to_string(i));
    }
  }
}

// --- criterion 5: perplexity & selection -------------------------------------

// Scorer whose per-token logprob is -ln(p) where p is parsed from the
// continuation's last token, so continuations carry their own perplexity.
class DialedScorerTransport : public HttpTransport {
 public:
  HttpResponse post(const std::string& path,
                    const std::string& json_body) override {
    const nlohmann::json request = nlohmann::json::parse(json_body);
    const std::string prompt = request.at("prompt");
    const double target = std::stod(prompt.substr(prompt.rfind(' ') + 1));
    nlohmann::json token_logprobs = nlohmann::json::array();
    nlohmann::json text_offset = nlohmann::json::array();
    std::size_t i = 0;
    bool first = true;
    while (i < prompt.size()) {
      if (std::isspace(static_cast<unsigned char>(prompt[i]))) {
        ++i;
        continue;
      }
      text_offset.push_back(i);
      if (first) {
        token_logprobs.push_back(nullptr);
        first = false;
      } else {
        token_logprobs.push_back(-std::log(target));
      }
      while (i < prompt.size() &&
             !std::isspace(static_cast<unsigned char>(prompt[i]))) {
        ++i;
      }
    }
    const nlohmann::json body = {
        {"choices",
         nlohmann::json::array(
             {nlohmann::json{{"text", prompt},
                             {"logprobs",
                              nlohmann::json{{"token_logprobs", token_logprobs},
                                             {"text_offset", text_offset}}}}})}};
    return {200, body.dump()};
  }
};

void perplexity_and_selection() {
  // Uniform-logprob case: four tokens at ln(1/4).
  ScoredText uniform;
  uniform.logprobs = std::vector<double>(4, std::log(0.25));
  require_close(perplexity(uniform), 4.0, 1e-12, "uniform perplexity");

  // Selection over 1000 random perplexity pairs, ties included.
  LlmClient teacher(mft::mock_endpoint(1), std::make_shared<ResponseCache>());
  LlmClient scorer(
      Endpoint{std::make_shared<DialedScorerTransport>(), "dialed", {2, 1, 2}},
      std::make_shared<ResponseCache>());
  AlignmentStore scratch;
  AlignmentPipeline pipeline(TemplateSet::embedded(), teacher, scorer,
                             scratch);

  std::mt19937_64 rng(1618);
  for (int trial = 0; trial < 1000; ++trial) {
    const double p0 = 1.0 + static_cast<double>(rng() % 400) / 100.0;
    const double p1 = trial % 7 == 0
                          ? p0  // forced tie
                          : 1.0 + static_cast<double>(rng() % 400) / 100.0;
    // Same token count on both sides so equal targets give bit-identical
    // perplexities and genuinely exercise the tie rule.
    std::ostringstream k0, k1;
    k0 << "zero shot text " << p0;
    k1 << "reflected alt text " << p1;

    AlignmentRecord record;
    record.id = "r" + std::to_string(trial);
    record.input = "input";
    record.k0 = k0.str();
    record.k1 = k1.str();
    const AlignmentRecord selected = pipeline.select_alignment(record);

    require_close(*selected.ppl0, p0, 1e-9, "dialed ppl0");
    require_close(*selected.ppl1, p1, 1e-9, "dialed ppl1");
    const std::string expected = p0 <= p1 ? "K0" : "K1";
    require(*selected.selected == expected,
            "selection chose " + *selected.selected + " for ppl0=" +
                std::to_string(p0) + " ppl1=" + std::to_string(p1));
  }

  // Store-wide optimality on a 100-item mock-scored run.
  std::vector<DatasetItem> items;
  for (int i = 0; i < 100; ++i) {
    items.push_back({"sel" + std::to_string(100 + i),
                     i % 2 == 0 ? "CCO" : "CCN",
                     "molecule with index " + std::to_string(i)});
  }
  LlmClient mock_teacher(mft::mock_endpoint(1, "mock-teacher"),
                         std::make_shared<ResponseCache>());
  LlmClient mock_scorer(mft::mock_endpoint(2, "mock-scorer"),
                        std::make_shared<ResponseCache>());
  AlignmentStore store;
  AlignmentPipeline mock_pipeline(TemplateSet::embedded(), mock_teacher,
                                  mock_scorer, store);
  StageConfig config;
  config.direction = TaskDirection::Cap2Mol;
  config.deterministic_clock = true;

  require(mock_pipeline.run_extract(items, config).failed() == 0,
          "mock extract failed");
  FingerprintEmbeddingProvider provider(64);
  const CorpusIndex corpus = build_corpus_index(items, &provider);
  require(mock_pipeline.run_reflect(items, corpus, &provider, config)
                  .failed() == 0,
          "mock reflect failed");
  require(mock_pipeline.run_select(items, config).failed() == 0,
          "mock select failed");

  double mean_selected = 0.0, mean_p0 = 0.0, mean_p1 = 0.0;
  const auto records = store.all();
  require(records.size() == items.size(), "store is missing records");
  for (const AlignmentRecord& record : records) {
    record.validate();
    mean_selected += std::min(*record.ppl0, *record.ppl1);
    mean_p0 += *record.ppl0;
    mean_p1 += *record.ppl1;
  }
  require(mean_selected <= mean_p0 + 1e-12,
          "mean selected perplexity exceeds mean ppl0");
  require(mean_selected <= mean_p1 + 1e-12,
          "mean selected perplexity exceeds mean ppl1");
}

// --- criterion 6: validity arithmetic ---------------------------------------

void validity_arithmetic() {
  std::vector<std::string> outputs;
  outputs.reserve(3300);
  for (int i = 0; i < 3300; ++i) {
    outputs.push_back(i < 60 ? "C1CC" : (i % 2 == 0 ? "CCO" : "c1ccccc1"));
  }
  const double got = validity(outputs);
  require(got == 3240.0 / 3300.0,
          "validity must be exactly 3240/3300, got " + std::to_string(got));
}

// --- criterion 7: paradigm emission -----------------------------------------

void paradigm_emission() {
  const auto start = std::chrono::steady_clock::now();
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "molforge_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  // 20-item toy dataset.
  std::vector<nlohmann::json> rows;
  const std::vector<std::string> smiles = {
      "CCO",      "CCCO",     "CC(=O)O",  "c1ccccc1",   "CCN",
      "CC(C)O",   "CCCC",     "CCOC",     "C1CCCCC1",   "Cc1ccccc1",
      "CC(=O)NC", "OCC(O)CO", "CCS",      "CSC",        "c1ccncc1",
      "C1CCOC1",  "NCC(=O)O", "CC#N",     "C=CC=C",     "OC(=O)c1ccccc1"};
  for (std::size_t i = 0; i < smiles.size(); ++i) {
    rows.push_back({{"id", "t" + std::to_string(100 + i)},
                    {"smiles", smiles[i]},
                    {"caption", "toy molecule number " + std::to_string(i) +
                                    " with descriptive text"}});
  }
  const std::string train = (base / "train.jsonl").string();
  write_jsonl(train, rows);

  auto run_pipeline = [&](const std::string& dir) {
    RunConfig config;
    config.train_path = train;
    config.output_dir = (base / dir).string();
    config.mock = true;
    config.deterministic_clock = true;
    config.direction = TaskDirection::Cap2Mol;
    config.embedding_dim = 64;
    config.seed = 7;
    auto ctx = runner::make_context(config, "pipeline");
    const auto result = runner::cmd_pipeline(ctx);
    require(result.exit_code == runner::kExitOk, "mock pipeline failed");
    return config.output_dir;
  };

  const std::string run1 = run_pipeline("run1");
  const std::string run2 = run_pipeline("run2");

  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  for (Paradigm paradigm : {Paradigm::NaiveSft, Paradigm::Instruction,
                            Paradigm::Icmt, Paradigm::CotIcmt}) {
    const std::string name =
        std::string(to_string(paradigm)) + ".cap2mol.train.jsonl";
    const std::string a = slurp(run1 + "/" + name);
    const std::string b = slurp(run2 + "/" + name);
    require(!a.empty(), name + " is empty");
    require(a == b, name + " differs between identical runs");
    validate_file(run1 + "/" + name, paradigm);
  }

  // Shape invariants on the emitted files.
  const auto naive = read_jsonl(run1 + "/naive_sft.cap2mol.train.jsonl");
  const auto instr = read_jsonl(run1 + "/instruction.cap2mol.train.jsonl");
  const auto icmt = read_jsonl(run1 + "/icmt.cap2mol.train.jsonl");
  const auto cot = read_jsonl(run1 + "/cot_icmt.cap2mol.train.jsonl");
  require(naive.size() == 20 && instr.size() == 20 && icmt.size() == 20 &&
              cot.size() == 20,
          "paradigm files must hold one line per item");

  // Rebuild the neighbor lookup to check chain containment piece by piece.
  std::map<std::string, std::pair<std::string, std::string>> by_id;
  for (const auto& row : rows) {
    by_id[row["id"]] = {row["caption"], row["smiles"]};  // input, target
  }
  std::map<std::string, std::string> selected_texts;
  {
    AlignmentStore emitted_store(run1 + "/alignments.cap2mol.jsonl");
    selected_texts = emitted_store.selected_texts();
  }

  for (std::size_t i = 0; i < 20; ++i) {
    require(naive[i]["messages"].size() == 2, "naive-SFT needs 2 messages");
    require(instr[i]["messages"].size() == 3 &&
                icmt[i]["messages"].size() == 3 && cot[i]["messages"].size() == 3,
            "templated paradigms need 3 messages");
    require(cot[i]["metadata"]["neighbor_ids"].size() == 2,
            "cot_icmt needs n=2 chains");

    const std::string id = cot[i]["metadata"]["item_id"];
    const std::string naive_input = naive[i]["messages"][0]["content"];
    const std::string instr_system = instr[i]["messages"][0]["content"];
    const std::string instr_user = instr[i]["messages"][1]["content"];
    const std::string icmt_user = icmt[i]["messages"][1]["content"];
    const std::string cot_user = cot[i]["messages"][1]["content"];

    // instruction strictly contains naive's input plus an instruction and
    // the query's selected alignment.
    require(instr_user.find(naive_input) != std::string::npos,
            "instruction must contain the naive input");
    require(!instr_system.empty(), "instruction needs a system instruction");
    require(instr_user.find(selected_texts.at(id)) != std::string::npos,
            "instruction must contain the selected alignment");
    require(instr_user.size() > naive_input.size(),
            "instruction must strictly extend naive");

    // cot_icmt strictly contains icmt's context inputs/targets plus each
    // neighbor's alignment, which icmt must not carry.
    const auto neighbor_ids =
        cot[i]["metadata"]["neighbor_ids"].get<std::vector<std::string>>();
    require(neighbor_ids ==
                icmt[i]["metadata"]["neighbor_ids"]
                    .get<std::vector<std::string>>(),
            "icmt and cot_icmt must share neighbors");
    for (const std::string& nid : neighbor_ids) {
      require(nid != id, "self-exclusion violated in emitted context");
      const auto& [n_input, n_target] = by_id.at(nid);
      require(icmt_user.find(n_input) != std::string::npos &&
                  icmt_user.find(n_target) != std::string::npos,
              "icmt context must carry the neighbor pair");
      require(icmt_user.find(selected_texts.at(nid)) == std::string::npos,
              "icmt context must not carry alignments");
      require(cot_user.find(n_input) != std::string::npos &&
                  cot_user.find(n_target) != std::string::npos &&
                  cot_user.find(selected_texts.at(nid)) != std::string::npos,
              "cot_icmt chain must carry input, alignment, and target");
    }
    require(cot_user.size() > icmt_user.size(),
            "cot_icmt must strictly extend icmt");
  }

  fs::remove_all(base);
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  require(elapsed < 60, "mock pipeline exceeded the 60 s budget (" +
                            std::to_string(elapsed) + " s)");
}

// --- criterion 8: fingerprint properties -------------------------------------

void fingerprint_properties() {
  std::mt19937_64 rng(86420);
  const auto corpus = mft::build_corpus(100, 13579);

  std::vector<Fingerprint> fps;
  for (const std::string& smiles : corpus) {
    fps.push_back(morgan_fingerprint(parse_smiles(smiles), 2, 2048));
  }

  // 1000 random pairs: symmetry, range, identity.
  for (int trial = 0; trial < 1000; ++trial) {
    const Fingerprint& a = fps[rng() % fps.size()];
    const Fingerprint& b = fps[rng() % fps.size()];
    const double ab = tanimoto(a, b);
    require(ab == tanimoto(b, a), "tanimoto is not symmetric");
    require(ab >= 0.0 && ab <= 1.0, "tanimoto out of range");
    if (a.count() > 0) {
      require(tanimoto(a, a) == 1.0, "tanimoto(a,a) must be 1");
    }
  }

  // Isomorphism invariance: 3 kinds x 10 relabelings x 100 molecules.
  for (const std::string& smiles : corpus) {
    const MoleculeGraph mol = parse_smiles(smiles);
    const Fingerprint morgan = morgan_fingerprint(mol, 2, 2048);
    const Fingerprint path = path_fingerprint(mol, 7, 2048);
    const Fingerprint keys = structural_keys(mol);
    for (int trial = 0; trial < 10; ++trial) {
      const auto order = mft::random_permutation(mol.atom_count(), rng);
      const MoleculeGraph relabeled = parse_smiles(write_smiles(mol, order));
      require(tanimoto(morgan, morgan_fingerprint(relabeled, 2, 2048)) == 1.0,
              "morgan fingerprint changed under relabeling for " + smiles);
      require(tanimoto(path, path_fingerprint(relabeled, 7, 2048)) == 1.0,
              "path fingerprint changed under relabeling for " + smiles);
      require(tanimoto(keys, structural_keys(relabeled)) == 1.0,
              "structural keys changed under relabeling for " + smiles);
    }
  }
}

}  // namespace

int main() {
  std::printf("molforge acceptance suite\n");
  criterion("smiles-round-trip", smiles_round_trip);
  criterion("probe-soundness", probe_soundness);
  criterion("metric-oracles", metric_oracles);
  criterion("bm25-equivalence", bm25_equivalence);
  criterion("perplexity-selection", perplexity_and_selection);
  criterion("validity-arithmetic", validity_arithmetic);
  criterion("paradigm-emission", paradigm_emission);
  criterion("fingerprint-properties", fingerprint_properties);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
