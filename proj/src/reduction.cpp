#include <algorithm>
#include <set>

#include "thy/errors.hpp"
#include "thy/graph.hpp"

namespace thy {

namespace {

Matrix clip_negative(const Matrix& m) {
  // binarized() maps every non-positive entry, including -1, to 0.
  return m.binarized();
}

Matrix reduce_acyclic(const Matrix& a) {
  const Matrix closure = kernels::floyd_warshall(a);
  return clip_negative(kernels::subtract(a, kernels::multiply(a, closure)));
}

}  // namespace

ImplicationGraph transitive_reduction(const ImplicationGraph& g) {
  const Condensation c = condensation(g);
  ImplicationGraph out(g.atoms());

  if (!c.has_cycle(g)) {
    out = ImplicationGraph(g.atoms(), reduce_acyclic(g.adjacency()));
  } else {
    const std::size_t m = c.components.size();
    Matrix dag(m);
    for (const auto& [a, b] : c.dag_edges) dag(a, b) = 1;
    const Matrix reduced = reduce_acyclic(dag);

    // A component C and its mirror !C share one cycle shape and mirrored
    // representatives, so the contrapositive union below adds no edges.
    std::vector<std::size_t> rep(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& comp = c.components[i];
      const std::size_t j = c.component_of[g.negate(comp.front())];
      const bool primary = i <= j;
      rep[i] = primary ? comp.front() : g.negate(c.components[j].front());
      if (comp.size() > 1) {
        const auto& base = primary ? comp : c.components[j];
        for (std::size_t k = 0; k < base.size(); ++k) {
          const std::size_t a = base[k], b = base[(k + 1) % base.size()];
          if (primary) out.add_edge(a, b);
          else out.add_edge(g.negate(b), g.negate(a));
        }
      } else if (g.has_edge(comp.front(), comp.front())) {
        out.add_edge(comp.front(), comp.front());
      }
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (reduced(a, b)) out.add_edge(rep[a], rep[b]);

    for (const auto& [u, v] : out.edges()) out.add_edge(out.negate(v), out.negate(u));
  }

  for (const auto& [edge, formulas] : g.origin())
    if (out.has_edge(edge.first, edge.second))
      for (std::size_t f : formulas) out.add_origin(edge, f);
  return out;
}

ReductionMatrices reduction_matrices(const ImplicationGraph& g) {
  ReductionMatrices r;
  r.adjacency = g.adjacency();
  r.power_sum = kernels::power_sum(r.adjacency, g.node_count());
  r.closure = r.power_sum.binarized();
  r.product = kernels::multiply(r.adjacency, r.closure);
  r.difference = kernels::subtract(r.adjacency, r.product);
  r.reduction = clip_negative(r.difference);
  return r;
}

CanonicalSet canonical_set(std::span<const Formula> theory, AtomTable seed, ClosureMethod method) {
  CanonicalSet cs;
  cs.theory = as_implication_theory(theory, std::move(seed));
  cs.graph = build_graph(cs.theory);
  cs.closure = transitive_closure(cs.graph, method);
  cs.reduction = transitive_reduction(cs.graph);
  cs.closure_theory = graph_to_theory(cs.closure);
  cs.reduced_theory = graph_to_theory(cs.reduction);

  const ImplicationGraph& g = cs.graph;
  auto representative = [&g](Edge e) {
    const Edge mirror{g.negate(e.second), g.negate(e.first)};
    return e.first <= mirror.first ? e : mirror;
  };

  for (const Edge& e : canonical_edges(cs.closure))
    if (!g.has_edge(e.first, e.second)) cs.derived.push_back(e);

  std::set<Edge> claimed;
  for (const auto& imp : cs.theory.implications) {
    const Edge e{g.node_of(imp.antecedent), g.node_of(imp.consequent)};
    if (e.first == e.second) {
      cs.removed.push_back({imp.source, "tautology"});
      continue;
    }
    const Edge key = representative(e);
    if (claimed.count(key)) {
      cs.removed.push_back({imp.source, "duplicate"});
    } else if (cs.reduction.has_edge(e.first, e.second)) {
      cs.kept.push_back(imp.source);
      claimed.insert(key);
    } else {
      cs.removed.push_back({imp.source, "derivable"});
    }
  }
  for (const Edge& e : canonical_edges(cs.reduction))
    if (!claimed.count(e)) cs.synthesized.push_back(e);

  cs.self_refuting = self_refuting_nodes(cs.closure);
  return cs;
}

}  // namespace thy
