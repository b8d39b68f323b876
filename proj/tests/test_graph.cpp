#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thy/clausal.hpp"
#include "thy/errors.hpp"
#include "thy/graph.hpp"

using namespace thy;
using namespace thy::testing;

namespace {

AtomTable symbols(std::initializer_list<const char*> names) {
  std::vector<Atom> atoms;
  for (const char* n : names) atoms.push_back(Atom::symbol(n));
  return AtomTable(atoms);
}

ImplicationGraph pqrs_graph() {
  const TheoryDocument doc = load_document("pqrs.thy");
  return build_graph(as_implication_theory(doc.theory(), symbols({"P", "Q", "R", "S"})));
}

std::set<std::pair<std::string, std::string>> labelled_edges(const ImplicationGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges()) out.insert({g.label(u), g.label(v)});
  return out;
}

Matrix rows(std::vector<std::vector<Matrix::value_type>> r) {
  std::vector<Matrix::value_type> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return Matrix(r.size(), flat);
}

}  // namespace

// Nodes P, Q, R, S, !P, !Q, !R, !S.
TEST(Pqrs, ReductionMatrices) {
  const ReductionMatrices m = reduction_matrices(pqrs_graph());
  EXPECT_EQ(m.adjacency, rows({{0, 0, 1, 1, 0, 0, 0, 0},
                               {0, 0, 1, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 1},
                               {0, 0, 0, 0, 1, 1, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0, 0}}));
  EXPECT_EQ(m.power_sum, rows({{0, 1, 2, 1, 0, 0, 0, 0},
                               {0, 0, 1, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 1, 1, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0, 1},
                               {0, 0, 0, 0, 2, 1, 0, 1},
                               {0, 0, 0, 0, 1, 0, 0, 0}}));
  EXPECT_EQ(m.closure, m.power_sum.binarized());
  EXPECT_EQ(m.product, rows({{0, 1, 1, 0, 0, 0, 0, 0},
                             {0, 0, 0, 0, 0, 0, 0, 0},
                             {0, 0, 0, 0, 0, 0, 0, 0},
                             {0, 0, 1, 0, 0, 0, 0, 0},
                             {0, 0, 0, 0, 0, 0, 0, 0},
                             {0, 0, 0, 0, 1, 0, 0, 0},
                             {0, 0, 0, 0, 1, 0, 0, 1},
                             {0, 0, 0, 0, 0, 0, 0, 0}}));
  EXPECT_EQ(m.difference, rows({{0, -1, 0, 1, 0, 0, 0, 0},
                                {0, 0, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 1, -1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, -1, 0, 0, 1},
                                {0, 0, 0, 0, 0, 1, 0, -1},
                                {0, 0, 0, 0, 1, 0, 0, 0}}));
  EXPECT_EQ(m.reduction, rows({{0, 0, 0, 1, 0, 0, 0, 0},
                               {0, 0, 1, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0, 1},
                               {0, 0, 0, 0, 0, 1, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0, 0}}));
  EXPECT_EQ(transitive_reduction(pqrs_graph()).adjacency(), m.reduction);
}

TEST(Pqrs, CanonicalSet) {
  const TheoryDocument doc = load_document("pqrs.thy");
  const CanonicalSet cs = canonical_set(doc.theory(), symbols({"P", "Q", "R", "S"}));
  EXPECT_EQ(cs.kept, (std::vector<std::size_t>{0, 2, 3}));
  ASSERT_EQ(cs.removed.size(), 1u);
  EXPECT_EQ(cs.removed[0].formula, 1u);
  EXPECT_EQ(cs.removed[0].reason, "derivable");
  EXPECT_EQ(cs.reduced_theory.size(), 3u);
  EXPECT_TRUE(tt_equivalent(doc.theory(), cs.reduced_theory));
}

TEST(CaseStudy, GraphClosureAndReduction) {
  const CaseStudy c = case_study();
  const CanonicalSet cs = canonical_set(c.theory());
  const ImplicationGraph& g = cs.graph;
  ASSERT_EQ(g.atom_count(), 4u);
  EXPECT_EQ(g.label(0), "OS > 5");
  EXPECT_EQ(g.label(6), "!(SI = True)");
  EXPECT_EQ(g.edge_count(), 8u);
  const std::vector<Edge> expected{{0, 1}, {0, 6}, {1, 6}, {1, 7}, {2, 4}, {2, 5}, {3, 5}, {5, 4}};
  EXPECT_EQ(g.edges(), expected);

  const ImplicationGraph& closure = cs.closure;
  EXPECT_EQ(closure.edge_count(), 10u);
  EXPECT_TRUE(closure.has_edge(0, 7));
  EXPECT_TRUE(closure.has_edge(3, 4));
  EXPECT_EQ(cs.derived, (std::vector<Edge>{{0, 7}}));
  EXPECT_EQ(to_string(edge_formula(closure, {0, 7})), "OS > 5 -> !(RD = True)");

  const ImplicationGraph& red = cs.reduction;
  EXPECT_EQ(red.edge_count(), 6u);
  EXPECT_FALSE(red.has_edge(0, 6));
  EXPECT_FALSE(red.has_edge(2, 4));
  EXPECT_EQ(cs.kept, (std::vector<std::size_t>{0, 1, 2}));
  ASSERT_EQ(cs.removed.size(), 1u);
  EXPECT_EQ(cs.removed[0].formula, 3u);
  EXPECT_TRUE(cs.synthesized.empty());
  EXPECT_TRUE(cs.self_refuting.empty());
}

TEST(Graph, RejectsNonImplications) {
  const Formula p = symbol("P"), q = symbol("Q"), r = symbol("R");
  const Theory t{Formula::implication(p, q), Formula::implication(Formula::conjunction(p, q), r)};
  try {
    as_implication_theory(t);
    FAIL();
  } catch (const NotImplicational& e) {
    EXPECT_EQ(e.formula_index(), 1u);
    EXPECT_NE(std::string(e.what()).find("formula 2"), std::string::npos);
  }
  EXPECT_THROW(as_implication_theory(Theory{p}), NotImplicational);
  EXPECT_THROW(as_implication_theory(Theory{Formula::implication(Formula::negation(Formula::negation(p)), q)}),
               NotImplicational);
}

TEST(Graph, SingleImplication) {
  const Theory t{Formula::implication(symbol("P"), symbol("Q"))};
  const CanonicalSet cs = canonical_set(t);
  EXPECT_EQ(cs.graph.edges(), (std::vector<Edge>{{0, 1}, {3, 2}}));
  EXPECT_EQ(cs.closure.edges(), cs.graph.edges());
  EXPECT_EQ(cs.reduction.edges(), cs.graph.edges());
  EXPECT_EQ(cs.kept, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(cs.derived.empty());
  EXPECT_EQ(graph_to_theory(cs.reduction).size(), 1u);
}

TEST(Graph, CyclicTheory) {
  const TheoryDocument doc = load_document("cyclic.thy");
  const CanonicalSet cs = canonical_set(doc.theory(), AtomTable(atoms_of(doc.theory())));
  const Condensation c = condensation(cs.graph);
  EXPECT_TRUE(c.has_cycle(cs.graph));
  EXPECT_EQ(c.components.front(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(transitive_closure(cs.reduction).adjacency(), cs.closure.adjacency());
  EXPECT_TRUE(cs.reduction.contrapositive_symmetric());
  EXPECT_EQ(cs.kept, (std::vector<std::size_t>{0, 1, 3}));
  ASSERT_EQ(cs.removed.size(), 1u);
  EXPECT_EQ(cs.removed[0].formula, 2u);
  EXPECT_TRUE(tt_equivalent(doc.theory(), cs.reduced_theory));
}

TEST(Graph, SelfRefutingLiteral) {
  const Formula p = symbol("P"), q = symbol("Q");
  const Theory t{Formula::implication(p, q), Formula::implication(p, Formula::negation(q))};
  const CanonicalSet cs = canonical_set(t);
  EXPECT_EQ(cs.self_refuting, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(entails(t, Formula::negation(p)).entailed);
}

TEST(Graph, CanonicalEdgesRequireSymmetry) {
  ImplicationGraph g(symbols({"P", "Q"}));
  g.add_edge(0, 1);
  EXPECT_FALSE(g.contrapositive_symmetric());
  EXPECT_THROW(canonical_edges(g), AsymmetricGraph);
  g.add_edge(3, 2);
  EXPECT_EQ(canonical_edges(g), (std::vector<Edge>{{0, 1}}));
}

TEST(GraphProperties, CondensationMatchesMutualReachability) {
  Rng rng(51);
  for (int round = 0; round < 200; ++round) {
    const ImplicationGraph g = random_graph(rng, 1 + rng.below(7), 12);
    const Condensation c = condensation(g);
    EXPECT_EQ(c.components, mutual_reachability_partition(g.adjacency())) << round;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      const auto& comp = c.components[c.component_of[v]];
      EXPECT_TRUE(std::find(comp.begin(), comp.end(), v) != comp.end());
    }
  }
}

TEST(GraphProperties, ClosureIsIdempotentAndMethodsAgree) {
  Rng rng(53);
  for (int round = 0; round < 200; ++round) {
    const ImplicationGraph g = random_graph(rng, 1 + rng.below(8), 14);
    const ImplicationGraph fw = transitive_closure(g, ClosureMethod::FloydWarshall);
    const ImplicationGraph mp = transitive_closure(g, ClosureMethod::MatrixPower);
    EXPECT_EQ(fw.adjacency(), mp.adjacency()) << round;
    EXPECT_EQ(fw.adjacency(), reachability_matrix(g.adjacency())) << round;
    EXPECT_EQ(transitive_closure(fw).adjacency(), fw.adjacency()) << round;
    EXPECT_TRUE(fw.contrapositive_symmetric());
  }
}

TEST(GraphProperties, ReductionPreservesClosureAndSymmetry) {
  Rng rng(57);
  for (int round = 0; round < 300; ++round) {
    const ImplicationGraph g = random_graph(rng, 1 + rng.below(8), 14);
    const ImplicationGraph r = transitive_reduction(g);
    EXPECT_EQ(transitive_closure(r).adjacency(), transitive_closure(g).adjacency()) << round;
    EXPECT_TRUE(r.contrapositive_symmetric()) << round;
    EXPECT_LE(r.edge_count(), std::max(g.edge_count(), transitive_closure(g).edge_count()));
  }
}

TEST(GraphProperties, ReductionIsMinimal) {
  Rng rng(59);
  int acyclic = 0, cyclic = 0;
  for (int round = 0; round < 400; ++round) {
    const std::size_t atoms = 2 + rng.below(6);
    const Theory t = random_implication_theory(rng, atoms, 10);
    if (!tt_satisfiable(t)) continue;
    const ImplicationGraph g = build_graph(as_implication_theory(t));
    const bool has_cycle = condensation(g).has_cycle(g);
    ++(has_cycle ? cyclic : acyclic);
    const ImplicationGraph r = transitive_reduction(g);
    const Matrix target = transitive_closure(g).adjacency();
    for (const auto& [u, v] : r.edges()) {
      Matrix a = r.adjacency();
      a(u, v) = 0;
      EXPECT_NE(reachability_matrix(a), target) << round;
      if (!has_cycle) EXPECT_TRUE(g.has_edge(u, v)) << round;
    }
  }
  EXPECT_GE(acyclic, 50);
  EXPECT_GE(cyclic, 20);
}

TEST(GraphProperties, ClosureEdgesAreEntailed) {
  Rng rng(61);
  for (int round = 0; round < 80; ++round) {
    const std::size_t atoms = 1 + rng.below(5);
    const Theory t = random_implication_theory(rng, atoms, 8);
    const CanonicalSet cs = canonical_set(t);
    for (const Formula& f : cs.closure_theory) {
      EXPECT_TRUE(entails(t, f).entailed) << round << " " << to_string(f);
      EXPECT_TRUE(tt_entails(t, f)) << round;
    }
    EXPECT_TRUE(tt_equivalent(t, cs.reduced_theory)) << round;
    EXPECT_TRUE(tt_equivalent(t, cs.closure_theory)) << round;
  }
}

TEST(GraphProperties, ChainingIsCompleteForLiteralImplications) {
  Rng rng(67);
  for (int round = 0; round < 80; ++round) {
    const std::size_t atoms = 2 + rng.below(4);
    const Theory t = random_implication_theory(rng, atoms, 7);
    std::vector<Atom> seed;
    for (std::size_t i = 0; i < atoms; ++i) seed.push_back(Atom::symbol(atom_name(i)));
    const CanonicalSet cs = canonical_set(t, AtomTable(seed));
    const ImplicationGraph& cl = cs.closure;
    const bool satisfiable = tt_satisfiable(t);
    for (std::size_t u = 0; u < cl.node_count(); ++u)
      for (std::size_t v = 0; v < cl.node_count(); ++v) {
        if (u == v || cl.has_edge(u, v) || !satisfiable) continue;
        const Formula f = edge_formula(cl, {u, v});
        // l -> !l is entailed through a refutation the graph does not chain.
        if (v == cl.negate(u)) continue;
        const bool unsat_premise = std::find(cs.self_refuting.begin(), cs.self_refuting.end(), u) !=
                                   cs.self_refuting.end();
        const bool tautological_target =
            std::find(cs.self_refuting.begin(), cs.self_refuting.end(), cl.negate(v)) !=
            cs.self_refuting.end();
        if (unsat_premise || tautological_target) continue;
        EXPECT_FALSE(tt_entails(t, f)) << round << " " << to_string(f);
      }
  }
}

TEST(GraphProperties, NodeOrderDoesNotChangeAcyclicResults) {
  Rng rng(71);
  for (int round = 0; round < 100; ++round) {
    const std::size_t atoms = 2 + rng.below(5);
    const Theory t = random_implication_theory(rng, atoms, 8);
    std::vector<Atom> seed;
    for (std::size_t i = 0; i < atoms; ++i) seed.push_back(Atom::symbol(atom_name(i)));
    const CanonicalSet a = canonical_set(t, AtomTable(seed));
    std::reverse(seed.begin(), seed.end());
    const CanonicalSet b = canonical_set(t, AtomTable(seed));
    EXPECT_EQ(labelled_edges(a.closure), labelled_edges(b.closure)) << round;
    if (tt_satisfiable(t)) EXPECT_EQ(a.reduction.edge_count(), b.reduction.edge_count()) << round;
    if (!condensation(a.graph).has_cycle(a.graph))
      EXPECT_EQ(labelled_edges(a.reduction), labelled_edges(b.reduction)) << round;
  }
}

TEST(GraphProperties, TheoryRoundTrip) {
  Rng rng(73);
  for (int round = 0; round < 100; ++round) {
    const ImplicationGraph g = random_graph(rng, 1 + rng.below(5), 8);
    const Theory t = graph_to_theory(g);
    EXPECT_EQ(t.size(), canonical_edges(g).size());
    const ImplicationGraph back = build_graph(as_implication_theory(t, g.atoms()));
    Matrix expected = g.adjacency();
    for (std::size_t v = 0; v < g.node_count(); ++v) expected(v, v) = 0;
    EXPECT_EQ(back.adjacency(), expected) << round;
  }
}
