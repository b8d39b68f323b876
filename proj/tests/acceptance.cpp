// Acceptance run: one PASS/FAIL line per criterion, with its wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thy/clausal.hpp"
#include "thy/dsl.hpp"
#include "thy/errors.hpp"
#include "thy/graph.hpp"

using namespace thy;
using namespace thy::testing;

namespace {

/// Collects the first few mismatches of a criterion.
struct Check {
  bool ok = true;
  std::ostringstream notes;
  int reported = 0;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (reported++ < 5) notes << "    " << what << '\n';
  }
};

Matrix rows(std::vector<std::vector<Matrix::value_type>> r) {
  std::vector<Matrix::value_type> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return Matrix(r.size(), flat);
}

AtomTable seeded(std::size_t atoms) {
  std::vector<Atom> seed;
  for (std::size_t i = 0; i < atoms; ++i) seed.push_back(Atom::symbol(atom_name(i)));
  return AtomTable(seed);
}

void pqrs_matrices(Check& c) {
  const TheoryDocument doc = load_document("pqrs.thy");
  std::vector<Atom> pqrs;
  for (const char* n : {"P", "Q", "R", "S"}) pqrs.push_back(Atom::symbol(n));
  const ImplicationGraph g = build_graph(as_implication_theory(doc.theory(), AtomTable(pqrs)));
  const ReductionMatrices m = reduction_matrices(g);
  c.expect(m.adjacency == rows({{0, 0, 1, 1, 0, 0, 0, 0},
                                {0, 0, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 1, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 1},
                                {0, 0, 0, 0, 1, 1, 0, 0},
                                {0, 0, 0, 0, 1, 0, 0, 0}}),
           "A differs");
  c.expect(m.power_sum == rows({{0, 1, 2, 1, 0, 0, 0, 0},
                                {0, 0, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 1, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 1, 0, 0, 1},
                                {0, 0, 0, 0, 2, 1, 0, 1},
                                {0, 0, 0, 0, 1, 0, 0, 0}}),
           "sum of powers differs");
  c.expect(m.closure == rows({{0, 1, 1, 1, 0, 0, 0, 0},
                              {0, 0, 1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0},
                              {0, 1, 1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 1, 0, 0, 1},
                              {0, 0, 0, 0, 1, 1, 0, 1},
                              {0, 0, 0, 0, 1, 0, 0, 0}}),
           "closure differs");
  c.expect(m.product == rows({{0, 1, 1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0},
                              {0, 0, 1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 1, 0, 0, 0},
                              {0, 0, 0, 0, 1, 0, 0, 1},
                              {0, 0, 0, 0, 0, 0, 0, 0}}),
           "A * closure differs");
  c.expect(m.reduction == rows({{0, 0, 0, 1, 0, 0, 0, 0},
                                {0, 0, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 1, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 1},
                                {0, 0, 0, 0, 0, 1, 0, 0},
                                {0, 0, 0, 0, 1, 0, 0, 0}}),
           "reduction differs");
  c.expect(transitive_reduction(g).adjacency() == m.reduction, "transitive_reduction disagrees");
}

void case_study_synthesis(Check& c) {
  const TheoryDocument doc = load_document("casestudy.thy");
  const CaseStudy cs_ref = case_study();
  const CanonicalSet cs = canonical_set(doc.theory());
  c.expect(cs.derived.size() == 1, "expected exactly one derived implication pair");
  if (cs.derived.size() == 1) {
    const Formula f = edge_formula(cs.closure, cs.derived[0]);
    c.expect(f == cs_ref.phi5, "derived " + to_string(f));
  }
  c.expect(cs.closure.edge_count() == cs.graph.edge_count() + 2, "closure adds more than one pair");
  const Theory expected{cs_ref.phi1, cs_ref.phi2, cs_ref.phi3};
  c.expect(cs.kept == std::vector<std::size_t>{0, 1, 2}, "kept ids differ");
  Theory kept;
  for (std::size_t i : cs.kept) kept.push_back(doc.hypotheses[i].formula);
  c.expect(kept == expected, "kept hypotheses differ");
  // The reduced graph holds exactly the edge pairs of phi1..phi3.
  const ImplicationGraph expected_graph = build_graph(as_implication_theory(expected, cs.graph.atoms()));
  c.expect(cs.reduction.adjacency() == expected_graph.adjacency(), "reduced graph differs");
}

void oracle_equivalence(Check& c) {
  Rng rng(1001);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t atoms = 1 + rng.below(12);
    const Theory t = random_theory(rng, atoms, 12, 3);
    const Formula q = random_formula(rng, atoms, 2);
    bool via_resolution = false;
    try {
      via_resolution = entails(t, q).entailed;
    } catch (const ResourceLimit&) {
      c.expect(false, "resource limit on round " + std::to_string(round));
      continue;
    }
    c.expect(via_resolution == brute_force_entails(t, q), "disagreement on round " + std::to_string(round));
  }
}

void graph_properties(Check& c) {
  Rng rng(1002);
  int acyclic = 0;
  for (int round = 0; round < 1000; ++round) {
    const std::size_t atoms = 1 + rng.below(8);
    const ImplicationGraph g = build_graph(
        as_implication_theory(random_implication_theory(rng, atoms, 2 * atoms + 2), seeded(atoms)));
    const std::string tag = " (round " + std::to_string(round) + ")";
    const ImplicationGraph mp = transitive_closure(g, ClosureMethod::MatrixPower);
    const ImplicationGraph fw = transitive_closure(g, ClosureMethod::FloydWarshall);
    c.expect(mp.adjacency() == fw.adjacency(), "closure methods differ" + tag);
    const ImplicationGraph r = transitive_reduction(g);
    c.expect(transitive_closure(r).adjacency() == fw.adjacency(), "reduction changes the closure" + tag);
    c.expect(g.contrapositive_symmetric() && fw.contrapositive_symmetric() && r.contrapositive_symmetric(),
             "asymmetric output" + tag);
    if (condensation(g).has_cycle(g)) continue;
    ++acyclic;
    for (const auto& [u, v] : r.edges()) {
      Matrix a = r.adjacency();
      a(u, v) = 0;
      c.expect(reachability_matrix(a) != fw.adjacency(), "redundant reduction edge" + tag);
    }
  }
  c.expect(acyclic >= 100, "too few acyclic samples: " + std::to_string(acyclic));
}

void minimal_theory_contract(Check& c) {
  Rng rng(1003);
  for (int round = 0; round < 300; ++round) {
    const Theory t = random_theory(rng, 1 + rng.below(6), 7, 2);
    const MinimalTheory m = minimal_theory(t);
    const std::string tag = " (round " + std::to_string(round) + ")";
    c.expect(tt_equivalent(t, m.theory), "not equivalent" + tag);
    for (std::size_t i = 0; i < m.theory.size(); ++i) {
      Theory rest = m.theory;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      c.expect(!tt_entails(rest, m.theory[i]), "redundant formula" + tag);
    }
  }
  const CaseStudy cs = case_study();
  const MinimalTheory m = minimal_theory(cs.theory());
  c.expect(m.theory == Theory{cs.phi1, cs.phi2, cs.phi3}, "case study minimal theory differs");
}

void horn_path(Check& c) {
  Rng rng(1004);
  for (int round = 0; round < 1000; ++round) {
    const Theory t = random_horn_theory(rng, 1 + rng.below(12), 14);
    const ClausalTheory ct = to_clausal(t);
    const bool oracle = tt_satisfiable(t);
    const std::string tag = " (round " + std::to_string(round) + ")";
    c.expect(horn_satisfiable(ct) == oracle, "forward chaining disagrees" + tag);
    c.expect(davis_putnam(ct).satisfiable == oracle, "resolution disagrees" + tag);
  }
  const Formula p1 = symbol("P1"), p2 = symbol("P2"), q = symbol("Q");
  const Theory rule{Formula::implication(Formula::conjunction(p1, p2), q)};
  const std::string kb = export_horn_kb(rule);
  c.expect(kb == "q :- p1, p2.\n", "knowledge base is '" + kb + "'");
}

void determinant_fixture(Check& c) {
  const TheoryDocument doc = load_document("determinant.thy");
  const Formula& law = doc.hypotheses.at(0).formula;
  for (int com = 1; com <= 4; ++com)
    for (int pro = 0; pro <= 120; ++pro) {
      const bool expected = pro == 120 - 20 * com;
      const bool got = evaluate_formula(law, {{"com", double(com)}, {"pro", double(pro)}}, doc.language);
      c.expect(got == expected, "(" + std::to_string(com) + ", " + std::to_string(pro) + ")");
    }
}

void dsl_round_trip(Check& c) {
  Rng rng(1005);
  for (int round = 0; round < 500; ++round) {
    const TheoryDocument doc = random_document(rng);
    const std::string text = render_theory(doc);
    const ParseResult r = parse_theory(text);
    c.expect(r.ok() && *r.document == doc && render_theory(*r.document) == text,
             "round trip fails on document " + std::to_string(round));
  }
  const std::vector<std::string> seeds = {read_data("casestudy.thy"), read_data("pqrs.thy"),
                                          read_data("determinant.thy")};
  int rejected = 0;
  for (int round = 0; round < 10000; ++round) {
    const std::string text = round % 4 == 0 ? random_bytes(rng, 160) : mutate(rng, rng.pick(seeds));
    try {
      const ParseResult r = parse_theory(text);
      if (!r.ok()) {
        ++rejected;
        c.expect(!r.diagnostics.empty(), "rejected without a diagnostic");
      }
    } catch (...) {
      c.expect(false, "parser threw on fuzz input " + std::to_string(round));
    }
  }
  c.expect(rejected > 5000, "fuzzer produced too few malformed inputs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked-example matrices", 1.0, pqrs_matrices},
      {2, "case-study closure and reduction", 1.0, case_study_synthesis},
      {3, "resolution agrees with truth tables", 60.0, oracle_equivalence},
      {4, "closure and reduction properties", 60.0, graph_properties},
      {5, "minimal theory contract", 60.0, minimal_theory_contract},
      {6, "Horn satisfiability and knowledge base", 60.0, horn_path},
      {7, "determinant law fixture", 1.0, determinant_fixture},
      {8, "DSL round trip and fuzzing", 120.0, dsl_round_trip},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(s < cr.limit_s, "took longer than " + std::to_string(cr.limit_s) + " s");
    char line[160];
    std::snprintf(line, sizeof line, "%s %d %s (%.3f s)", check.ok ? "PASS" : "FAIL", cr.id, cr.name, s);
    std::cout << line << '\n' << check.notes.str();
    if (!check.ok) ++failures;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria met"))
            << std::endl;
  return failures ? 1 : 0;
}
