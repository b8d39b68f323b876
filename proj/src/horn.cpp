#include <deque>

#include "thy/clausal.hpp"
#include "thy/errors.hpp"

namespace thy {

HornKind classify(const Clause& clause) {
  switch (clause.positive_count()) {
    case 0: return HornKind::Goal;
    case 1: return clause.size() == 1 ? HornKind::Fact : HornKind::Rule;
    default: return HornKind::NonHorn;
  }
}

bool is_horn(const ClausalTheory& theory) {
  for (const auto& c : theory.clauses)
    if (classify(c) == HornKind::NonHorn) return false;
  return true;
}

bool horn_satisfiable(const ClausalTheory& theory) {
  const std::size_t n = theory.atoms.size();
  const std::size_t m = theory.clauses.size();

  std::vector<std::size_t> pending(m, 0);
  std::vector<std::optional<std::uint32_t>> head(m);
  std::vector<std::vector<std::size_t>> watchers(n);
  std::vector<bool> truth(n, false);
  std::deque<std::uint32_t> queue;

  for (std::size_t i = 0; i < m; ++i) {
    const Clause& c = theory.clauses[i];
    if (classify(c) == HornKind::NonHorn)
      throw HornPreconditionFailed("clause " + to_string(c, theory.atoms) +
                                   " has more than one positive literal");
    for (SignedAtom lit : c.literals()) {
      if (lit.positive()) {
        head[i] = lit.atom();
      } else {
        ++pending[i];
        watchers[lit.atom()].push_back(i);
      }
    }
    if (pending[i] == 0) {
      if (!head[i]) return false;  // empty clause
      if (!truth[*head[i]]) {
        truth[*head[i]] = true;
        queue.push_back(*head[i]);
      }
    }
  }

  // Minimal model by forward chaining; a goal whose body becomes true refutes it.
  while (!queue.empty()) {
    const std::uint32_t atom = queue.front();
    queue.pop_front();
    for (std::size_t i : watchers[atom]) {
      if (--pending[i] != 0) continue;
      if (!head[i]) return false;
      if (!truth[*head[i]]) {
        truth[*head[i]] = true;
        queue.push_back(*head[i]);
      }
    }
  }
  return true;
}

}  // namespace thy
