#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "thy/clausal.hpp"
#include "thy/errors.hpp"

namespace thy {

namespace {

/// Append-only clause store with occurrence lists and a live set.
class ClauseStore {
 public:
  ClauseStore(SaturationResult& result, std::size_t atom_count)
      : result_(result), occurrences_(2 * atom_count) {}

  bool known(const Clause& c) const { return seen_.count(c) != 0; }

  bool subsumed(const Clause& c) const {
    for (std::size_t id : live_)
      if (active_[id] && result_.clauses[id].subsumes(c)) return true;
    return false;
  }

  std::size_t add(Clause c, bool backward_subsumption) {
    const std::size_t id = result_.clauses.size();
    if (backward_subsumption) {
      bool removed = false;
      for (std::size_t k : live_) {
        if (active_[k] && c.size() < result_.clauses[k].size() && c.subsumes(result_.clauses[k])) {
          active_[k] = false;
          removed = true;
        }
      }
      if (removed)
        std::erase_if(live_, [this](std::size_t k) { return !active_[k]; });
    }
    for (SignedAtom lit : c.literals()) occurrences_[lit.code()].push_back(id);
    seen_.insert(c);
    result_.clauses.push_back(std::move(c));
    active_.push_back(true);
    live_.push_back(id);
    return id;
  }

  bool active(std::size_t id) const { return active_[id]; }
  const std::vector<std::size_t>& occurrences(SignedAtom lit) const {
    return occurrences_[lit.code()];
  }
  const std::vector<std::size_t>& live() const { return live_; }

 private:
  SaturationResult& result_;
  std::vector<std::vector<std::size_t>> occurrences_;
  std::vector<bool> active_;
  std::vector<std::size_t> live_;
  std::set<Clause> seen_;
};

struct Candidate {
  Clause clause;
  std::size_t positive_parent;
  std::size_t negative_parent;
  std::uint32_t pivot;
};

}  // namespace

std::vector<ResolutionStep> SaturationResult::refutation() const {
  if (satisfiable || clauses.empty() || !clauses.back().empty()) return {};
  std::map<std::size_t, const ResolutionStep*> by_resolvent;
  for (const auto& s : trace) by_resolvent[s.resolvent] = &s;

  std::set<std::size_t> needed;
  std::vector<std::size_t> stack{clauses.size() - 1};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    auto it = by_resolvent.find(id);
    if (it == by_resolvent.end() || !needed.insert(id).second) continue;
    stack.push_back(it->second->positive_parent);
    stack.push_back(it->second->negative_parent);
  }
  std::vector<ResolutionStep> out;
  for (std::size_t id : needed) out.push_back(*by_resolvent[id]);
  return out;
}

SaturationResult davis_putnam(const ClausalTheory& theory, const SaturationOptions& options) {
  SaturationResult result;
  result.atoms = theory.atoms;
  ClauseStore store(result, theory.atoms.size());

  // X := clausal form, minus tautologies and (optionally) subsumed clauses.
  std::vector<std::size_t> frontier;
  for (const auto& c : theory.clauses) {
    if (c.is_tautology() || store.known(c)) continue;
    if (options.subsumption && store.subsumed(c)) continue;
    const std::size_t id = store.add(c, options.subsumption);
    if (c.empty()) {
      result.input_count = result.clauses.size();
      result.satisfiable = false;
      return result;
    }
    frontier.push_back(id);
  }
  result.input_count = result.clauses.size();

  // Saturate: each round adds every resolvent with at least one parent from
  // the previous round, until nothing new appears or {} is derived.
  while (true) {
    ++result.rounds;
    std::vector<bool> in_frontier(result.clauses.size(), false);
    for (std::size_t id : frontier) in_frontier[id] = true;

    std::vector<Candidate> candidates;
    std::set<Clause> pending;
    for (std::size_t i : frontier) {
      if (!store.active(i)) continue;
      for (SignedAtom lit : result.clauses[i].literals()) {
        for (std::size_t j : store.occurrences(lit.negated())) {
          if (!store.active(j) || (in_frontier[j] && j < i)) continue;
          const std::size_t pos = lit.positive() ? i : j;
          const std::size_t neg = lit.positive() ? j : i;
          Clause r = resolve_step(result.clauses[pos], result.clauses[neg], lit.atom());
          if (r.is_tautology() || store.known(r) || pending.count(r)) continue;
          pending.insert(r);
          candidates.push_back({std::move(r), pos, neg, lit.atom()});
        }
      }
    }

    auto empty_it = std::find_if(candidates.begin(), candidates.end(),
                                 [](const Candidate& c) { return c.clause.empty(); });
    if (empty_it != candidates.end()) {
      const std::size_t id = store.add(empty_it->clause, false);
      result.trace.push_back({id, empty_it->positive_parent, empty_it->negative_parent, empty_it->pivot});
      result.satisfiable = false;
      return result;
    }

    std::vector<std::size_t> next;
    for (auto& cand : candidates) {
      if (options.subsumption && store.subsumed(cand.clause)) continue;
      const std::size_t id = store.add(std::move(cand.clause), options.subsumption);
      result.trace.push_back({id, cand.positive_parent, cand.negative_parent, cand.pivot});
      next.push_back(id);
      if (result.clauses.size() > options.max_clauses)
        throw ResourceLimit("saturation exceeded " + std::to_string(options.max_clauses) +
                            " clauses");
    }
    if (next.empty()) {
      result.satisfiable = true;
      return result;
    }
    frontier = std::move(next);
  }
}

SaturationResult davis_putnam(std::span<const Formula> theory, const SaturationOptions& options) {
  return davis_putnam(to_clausal(theory), options);
}

nlohmann::ordered_json to_json(const SaturationResult& result, bool refutation_only) {
  nlohmann::ordered_json j;
  j["satisfiable"] = result.satisfiable;
  auto& inputs = j["input_clauses"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.input_count; ++i)
    inputs.push_back(to_string(result.clauses[i], result.atoms));
  auto& steps = j["steps"] = nlohmann::ordered_json::array();
  const auto chosen = refutation_only ? result.refutation() : result.trace;
  for (const auto& s : chosen) {
    nlohmann::ordered_json step;
    step["id"] = s.resolvent;
    step["resolvent"] = to_string(result.clauses[s.resolvent], result.atoms);
    step["parents"] = {s.positive_parent, s.negative_parent};
    step["pivot"] = to_string(result.atoms[s.pivot]);
    steps.push_back(std::move(step));
  }
  return j;
}

Entailment entails(std::span<const Formula> theory, const Formula& query,
                   const SaturationOptions& options) {
  Theory extended(theory.begin(), theory.end());
  extended.push_back(Formula::negation(query));
  Entailment e;
  e.proof = davis_putnam(extended, options);
  e.entailed = !e.proof.satisfiable;
  return e;
}

MinimalTheory minimal_theory(std::span<const Formula> theory, std::span<const std::size_t> order,
                             const SaturationOptions& options) {
  std::vector<std::size_t> sequence(order.begin(), order.end());
  if (sequence.empty()) {
    sequence.resize(theory.size());
    std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  }
  {
    std::vector<std::size_t> sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != theory.size() || sorted[i] != i)
        throw Error("minimal_theory: order must be a permutation of 0.." +
                    std::to_string(theory.size() == 0 ? 0 : theory.size() - 1));
  }

  std::vector<bool> present(theory.size(), true);
  MinimalTheory out;
  for (std::size_t idx : sequence) {
    Theory rest;
    for (std::size_t k = 0; k < theory.size(); ++k)
      if (present[k] && k != idx) rest.push_back(theory[k]);
    if (entails(rest, theory[idx], options).entailed) {
      present[idx] = false;
      out.removed.push_back(idx);
    }
  }
  for (std::size_t k = 0; k < theory.size(); ++k) {
    if (!present[k]) continue;
    out.kept.push_back(k);
    out.theory.push_back(theory[k]);
  }
  return out;
}

}  // namespace thy
