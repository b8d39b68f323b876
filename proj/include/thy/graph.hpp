#pragma once

// Implication graphs over signed literals: construction, transitive closure,
// condensation, transitive reduction and the canonical hypothesis set.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thy/clausal.hpp"
#include "thy/kernels.hpp"
#include "thy/model.hpp"

namespace thy {

struct Implication {
  SignedAtom antecedent;
  SignedAtom consequent;
  /// Index of the formula in the input theory.
  std::size_t source = 0;
};

struct ImplicationTheory {
  AtomTable atoms;
  std::vector<Implication> implications;
};

/// Accepts only formulas `l -> l'` with l, l' an atom or a negated atom.
/// Atoms already in `seed` keep their positions. Throws NotImplicational.
ImplicationTheory as_implication_theory(std::span<const Formula> theory, AtomTable seed = {});

using Edge = std::pair<std::size_t, std::size_t>;

/// Digraph on 2n signed literals: node i < n is atom i, node n + i is its
/// negation (so P, Q, R, S, !P, !Q, !R, !S for four atoms).
class ImplicationGraph {
 public:
  ImplicationGraph() = default;
  explicit ImplicationGraph(AtomTable atoms);
  ImplicationGraph(AtomTable atoms, Matrix adjacency);

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t node_count() const { return adjacency_.dim(); }
  const AtomTable& atoms() const { return atoms_; }
  const Matrix& adjacency() const { return adjacency_; }

  std::size_t node_of(SignedAtom literal) const;
  SignedAtom literal_of(std::size_t node) const;
  std::size_t negate(std::size_t node) const;
  std::string label(std::size_t node) const;

  bool has_edge(std::size_t from, std::size_t to) const { return adjacency_(from, to) != 0; }
  void add_edge(std::size_t from, std::size_t to);
  /// Edges in (source, target) index order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  /// (u, v) present iff (neg v, neg u) present.
  bool contrapositive_symmetric() const;

  /// Source formulas of each edge; edges without an entry were derived.
  const std::map<Edge, std::vector<std::size_t>>& origin() const { return origin_; }
  void add_origin(Edge edge, std::size_t formula);

 private:
  AtomTable atoms_;
  Matrix adjacency_;
  std::map<Edge, std::vector<std::size_t>> origin_;
};

/// Every implication and its contrapositive; self-loops l -> l are dropped.
ImplicationGraph build_graph(const ImplicationTheory& theory);

enum class ClosureMethod { MatrixPower, FloydWarshall };

ImplicationGraph transitive_closure(const ImplicationGraph& g,
                                    ClosureMethod method = ClosureMethod::FloydWarshall);

struct Condensation {
  /// Strongly connected components ordered by smallest member; members ascending.
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of;
  /// Distinct component pairs joined by at least one edge, sorted.
  std::vector<Edge> dag_edges;

  /// True when some component has several nodes or a node has a self-loop.
  bool has_cycle(const ImplicationGraph& g) const;
};

Condensation condensation(const ImplicationGraph& g);

/// Closure-preserving reduction: binarize(A - A * closure(A)) on acyclic
/// graphs; cyclic graphs are condensed, reduced and expanded. Of each mirror
/// pair C, !C the component with the smaller first member becomes an
/// ascending cycle joined through its smallest member, and !C gets the
/// mirrored cycle and representative.
ImplicationGraph transitive_reduction(const ImplicationGraph& g);

/// Intermediate matrices of the acyclic reduction: A, sum_{k=1}^{2n} A^k,
/// its binarization, A * closure, A - A * closure, and the reduced adjacency.
struct ReductionMatrices {
  Matrix adjacency;
  Matrix power_sum;
  Matrix closure;
  Matrix product;
  Matrix difference;
  Matrix reduction;
};

ReductionMatrices reduction_matrices(const ImplicationGraph& g);

/// Picks, for every contrapositive edge pair, the edge whose source has the
/// smaller index. Throws AsymmetricGraph.
std::vector<Edge> canonical_edges(const ImplicationGraph& g);
Formula edge_formula(const ImplicationGraph& g, Edge edge);
Theory graph_to_theory(const ImplicationGraph& g);

/// Literals l whose closure reaches !l: resolution derives !l from the
/// theory, which the graph alone does not express.
std::vector<std::size_t> self_refuting_nodes(const ImplicationGraph& closure);

struct RemovedHypothesis {
  std::size_t formula;
  std::string reason;  // "derivable", "duplicate" or "tautology"
};

struct CanonicalSet {
  ImplicationTheory theory;
  ImplicationGraph graph;
  ImplicationGraph closure;
  ImplicationGraph reduction;
  /// T-bar: every implication derivable by chaining.
  Theory closure_theory;
  /// T0: minimal generating set.
  Theory reduced_theory;
  /// Closure edge pairs not present in the input graph.
  std::vector<Edge> derived;
  /// Input formulas whose edge pair survives the reduction.
  std::vector<std::size_t> kept;
  std::vector<RemovedHypothesis> removed;
  /// Reduction edge pairs that no input formula produced (cycle expansion).
  std::vector<Edge> synthesized;
  std::vector<std::size_t> self_refuting;
};

CanonicalSet canonical_set(std::span<const Formula> theory, AtomTable seed = {},
                           ClosureMethod method = ClosureMethod::FloydWarshall);

}  // namespace thy
