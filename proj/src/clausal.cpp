#include "thy/clausal.hpp"

#include <algorithm>
#include <set>

#include "thy/errors.hpp"

namespace thy {

AtomTable::AtomTable(std::span<const Atom> atoms) {
  for (const auto& a : atoms) intern(a);
}

std::uint32_t AtomTable::intern(const Atom& atom) {
  auto [it, inserted] = index_.try_emplace(atom_key(atom), static_cast<std::uint32_t>(atoms_.size()));
  if (inserted) atoms_.push_back(atom);
  return it->second;
}

std::optional<std::uint32_t> AtomTable::find(const Atom& atom) const {
  auto it = index_.find(atom_key(atom));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Clause

Clause::Clause(std::initializer_list<SignedAtom> literals)
    : Clause(std::vector<SignedAtom>(literals)) {}

Clause::Clause(std::vector<SignedAtom> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::contains(SignedAtom literal) const {
  return std::binary_search(literals_.begin(), literals_.end(), literal);
}

bool Clause::is_tautology() const {
  // Complementary literals are adjacent once sorted by code.
  for (std::size_t i = 1; i < literals_.size(); ++i)
    if (literals_[i].atom() == literals_[i - 1].atom()) return true;
  return false;
}

std::size_t Clause::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(literals_.begin(), literals_.end(), [](SignedAtom s) { return s.positive(); }));
}

bool Clause::subsumes(const Clause& other) const {
  return literals_.size() <= other.literals_.size() &&
         std::includes(other.literals_.begin(), other.literals_.end(), literals_.begin(),
                       literals_.end());
}

std::string to_string(const Clause& clause, const AtomTable& atoms) {
  std::string out = "{";
  bool first = true;
  for (SignedAtom lit : clause.literals()) {
    if (!first) out += ", ";
    first = false;
    const Atom& a = atoms[lit.atom()];
    if (lit.positive())
      out += to_string(a);
    else
      out += a.args.empty() ? "!" + to_string(a) : "!(" + to_string(a) + ")";
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Clausal conversion

namespace {

using ClauseSet = std::vector<Clause>;

void normalize(ClauseSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

ClauseSet both(ClauseSet a, const ClauseSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  normalize(a);
  return a;
}

ClauseSet either(const ClauseSet& a, const ClauseSet& b) {
  ClauseSet out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      std::vector<SignedAtom> lits = x.literals();
      lits.insert(lits.end(), y.literals().begin(), y.literals().end());
      out.emplace_back(std::move(lits));
    }
  }
  normalize(out);
  return out;
}

/// CNF of `f` when `positive`, of `!f` otherwise.
ClauseSet cnf(const Formula& f, bool positive, AtomTable& atoms) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {Clause{SignedAtom(atoms.intern(f.as_atom()), positive)}};
    case Formula::Kind::Not:
      return cnf(f.lhs(), !positive, atoms);
    case Formula::Kind::And:
      return positive ? both(cnf(f.lhs(), true, atoms), cnf(f.rhs(), true, atoms))
                      : either(cnf(f.lhs(), false, atoms), cnf(f.rhs(), false, atoms));
    case Formula::Kind::Or:
      return positive ? either(cnf(f.lhs(), true, atoms), cnf(f.rhs(), true, atoms))
                      : both(cnf(f.lhs(), false, atoms), cnf(f.rhs(), false, atoms));
    case Formula::Kind::Implies:
      return positive ? either(cnf(f.lhs(), false, atoms), cnf(f.rhs(), true, atoms))
                      : both(cnf(f.lhs(), true, atoms), cnf(f.rhs(), false, atoms));
    case Formula::Kind::Iff: {
      const ClauseSet lp = cnf(f.lhs(), true, atoms);
      const ClauseSet ln = cnf(f.lhs(), false, atoms);
      const ClauseSet rp = cnf(f.rhs(), true, atoms);
      const ClauseSet rn = cnf(f.rhs(), false, atoms);
      return positive ? both(either(ln, rp), either(lp, rn))
                      : both(either(lp, rp), either(ln, rn));
    }
  }
  return {};
}

}  // namespace

ClausalTheory to_clausal(std::span<const Formula> theory) { return to_clausal(theory, AtomTable{}); }

ClausalTheory to_clausal(std::span<const Formula> theory, AtomTable atoms) {
  ClausalTheory out;
  // Intern in first-occurrence order before conversion reorders anything.
  for (const auto& a : atoms_of(theory)) atoms.intern(a);
  std::set<Clause> seen;
  for (std::size_t i = 0; i < theory.size(); ++i) {
    for (auto& c : cnf(theory[i], true, atoms)) {
      if (seen.insert(c).second) {
        out.clauses.push_back(std::move(c));
        out.clause_origin.push_back(i);
      }
    }
  }
  out.atoms = std::move(atoms);
  return out;
}

Clause resolve_step(const Clause& positive_side, const Clause& negative_side, std::uint32_t pivot) {
  const SignedAtom pos(pivot, true);
  const SignedAtom neg(pivot, false);
  if (!positive_side.contains(pos) || !negative_side.contains(neg))
    throw PivotAbsent("pivot atom " + std::to_string(pivot) +
                      " does not occur with opposite signs in the two clauses");
  std::vector<SignedAtom> lits;
  lits.reserve(positive_side.size() + negative_side.size() - 2);
  for (SignedAtom s : positive_side.literals())
    if (s != pos) lits.push_back(s);
  for (SignedAtom s : negative_side.literals())
    if (s != neg) lits.push_back(s);
  return Clause(std::move(lits));
}

}  // namespace thy
