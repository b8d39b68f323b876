#include "thy/graph.hpp"

#include <algorithm>
#include <set>

#include "thy/errors.hpp"

namespace thy {

namespace {

std::optional<SignedAtom> as_literal(const Formula& f, AtomTable& atoms) {
  if (f.kind() == Formula::Kind::Atom) return SignedAtom(atoms.intern(f.as_atom()), true);
  if (f.kind() == Formula::Kind::Not && f.lhs().kind() == Formula::Kind::Atom)
    return SignedAtom(atoms.intern(f.lhs().as_atom()), false);
  return std::nullopt;
}

Formula literal_formula(const AtomTable& atoms, SignedAtom lit) {
  Formula a = Formula::atom(atoms[lit.atom()]);
  return lit.positive() ? a : Formula::negation(a);
}

}  // namespace

ImplicationTheory as_implication_theory(std::span<const Formula> theory, AtomTable seed) {
  ImplicationTheory out{std::move(seed), {}};
  for (std::size_t i = 0; i < theory.size(); ++i) {
    const Formula& f = theory[i];
    if (f.kind() != Formula::Kind::Implies)
      throw NotImplicational(i, "formula " + std::to_string(i + 1) + " is not an implication: " +
                                    to_string(f));
    // Check both sides before interning so a rejected formula leaves no atoms behind.
    AtomTable trial = out.atoms;
    auto lhs = as_literal(f.lhs(), trial);
    auto rhs = as_literal(f.rhs(), trial);
    if (!lhs || !rhs)
      throw NotImplicational(i, "formula " + std::to_string(i + 1) +
                                    " is not an implication between literals: " + to_string(f));
    out.atoms = std::move(trial);
    out.implications.push_back({*lhs, *rhs, i});
  }
  return out;
}

ImplicationGraph::ImplicationGraph(AtomTable atoms)
    : atoms_(std::move(atoms)), adjacency_(2 * atoms_.size()) {}

ImplicationGraph::ImplicationGraph(AtomTable atoms, Matrix adjacency)
    : atoms_(std::move(atoms)), adjacency_(adjacency.binarized()) {
  if (adjacency_.dim() != 2 * atoms_.size())
    throw Error("adjacency dimension " + std::to_string(adjacency_.dim()) +
                " does not match 2 x " + std::to_string(atoms_.size()) + " atoms");
}

std::size_t ImplicationGraph::node_of(SignedAtom literal) const {
  return literal.positive() ? literal.atom() : literal.atom() + atom_count();
}

SignedAtom ImplicationGraph::literal_of(std::size_t node) const {
  const std::size_t n = atom_count();
  return node < n ? SignedAtom(static_cast<std::uint32_t>(node), true)
                  : SignedAtom(static_cast<std::uint32_t>(node - n), false);
}

std::size_t ImplicationGraph::negate(std::size_t node) const {
  const std::size_t n = atom_count();
  return node < n ? node + n : node - n;
}

std::string ImplicationGraph::label(std::size_t node) const {
  return to_string(literal_formula(atoms_, literal_of(node)));
}

void ImplicationGraph::add_edge(std::size_t from, std::size_t to) { adjacency_(from, to) = 1; }

std::vector<Edge> ImplicationGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < node_count(); ++i)
    for (std::size_t j = 0; j < node_count(); ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t ImplicationGraph::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(adjacency_.data().begin(), adjacency_.data().end(),
                    [](Matrix::value_type v) { return v != 0; }));
}

bool ImplicationGraph::contrapositive_symmetric() const {
  for (const auto& [u, v] : edges())
    if (!has_edge(negate(v), negate(u))) return false;
  return true;
}

void ImplicationGraph::add_origin(Edge edge, std::size_t formula) {
  auto& list = origin_[edge];
  if (std::find(list.begin(), list.end(), formula) == list.end()) list.push_back(formula);
}

ImplicationGraph build_graph(const ImplicationTheory& theory) {
  ImplicationGraph g(theory.atoms);
  for (const auto& imp : theory.implications) {
    const std::size_t u = g.node_of(imp.antecedent);
    const std::size_t v = g.node_of(imp.consequent);
    if (u == v) continue;
    for (Edge e : {Edge{u, v}, Edge{g.negate(v), g.negate(u)}}) {
      g.add_edge(e.first, e.second);
      g.add_origin(e, imp.source);
    }
  }
  return g;
}

namespace {

ImplicationGraph with_origins(const ImplicationGraph& from, ImplicationGraph to) {
  for (const auto& [edge, formulas] : from.origin())
    if (to.has_edge(edge.first, edge.second))
      for (std::size_t f : formulas) to.add_origin(edge, f);
  return to;
}

}  // namespace

ImplicationGraph transitive_closure(const ImplicationGraph& g, ClosureMethod method) {
  Matrix reach = method == ClosureMethod::MatrixPower
                     ? kernels::power_sum(g.adjacency(), g.node_count()).binarized()
                     : kernels::floyd_warshall(g.adjacency());
  return with_origins(g, ImplicationGraph(g.atoms(), std::move(reach)));
}

bool Condensation::has_cycle(const ImplicationGraph& g) const {
  for (const auto& c : components)
    if (c.size() > 1 || g.has_edge(c.front(), c.front())) return true;
  return false;
}

Condensation condensation(const ImplicationGraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> raw;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> calls{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!calls.empty()) {
      Frame& fr = calls.back();
      const std::size_t v = fr.node;
      if (fr.next < n) {
        const std::size_t w = fr.next++;
        if (!g.has_edge(v, w)) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        raw.push_back(std::move(comp));
      }
      calls.pop_back();
      if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
    }
  }

  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Condensation c;
  c.components = std::move(raw);
  c.component_of.assign(n, 0);
  for (std::size_t i = 0; i < c.components.size(); ++i)
    for (std::size_t v : c.components[i]) c.component_of[v] = i;
  std::set<Edge> dag;
  for (const auto& [u, v] : g.edges())
    if (c.component_of[u] != c.component_of[v]) dag.emplace(c.component_of[u], c.component_of[v]);
  c.dag_edges.assign(dag.begin(), dag.end());
  return c;
}

std::vector<Edge> canonical_edges(const ImplicationGraph& g) {
  if (!g.contrapositive_symmetric())
    throw AsymmetricGraph("graph is not closed under contraposition");
  std::vector<Edge> out;
  for (const auto& [u, v] : g.edges())
    if (u <= g.negate(v)) out.emplace_back(u, v);
  return out;
}

Formula edge_formula(const ImplicationGraph& g, Edge edge) {
  return Formula::implication(literal_formula(g.atoms(), g.literal_of(edge.first)),
                              literal_formula(g.atoms(), g.literal_of(edge.second)));
}

Theory graph_to_theory(const ImplicationGraph& g) {
  Theory out;
  for (const Edge& e : canonical_edges(g)) out.push_back(edge_formula(g, e));
  return out;
}

std::vector<std::size_t> self_refuting_nodes(const ImplicationGraph& closure) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < closure.node_count(); ++v)
    if (closure.has_edge(v, closure.negate(v))) out.push_back(v);
  return out;
}

}  // namespace thy
