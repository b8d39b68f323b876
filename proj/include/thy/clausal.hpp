#pragma once

// Clausal form, resolution saturation (Davis-Putnam), entailment, Horn
// satisfiability, minimal theories and the truth-table oracle.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "thy/model.hpp"

namespace thy {

/// Interns atoms by syntactic identity; indices follow insertion order.
class AtomTable {
 public:
  AtomTable() = default;
  explicit AtomTable(std::span<const Atom> atoms);

  std::uint32_t intern(const Atom& atom);
  std::optional<std::uint32_t> find(const Atom& atom) const;
  const Atom& operator[](std::uint32_t index) const { return atoms_[index]; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// An atom index with a polarity, packed as `2 * atom + (negative ? 1 : 0)`.
class SignedAtom {
 public:
  constexpr SignedAtom() = default;
  constexpr SignedAtom(std::uint32_t atom, bool positive)
      : code_(atom * 2 + (positive ? 0u : 1u)) {}

  static constexpr SignedAtom from_code(std::uint32_t code) {
    SignedAtom s;
    s.code_ = code;
    return s;
  }

  constexpr std::uint32_t atom() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr SignedAtom negated() const { return from_code(code_ ^ 1u); }

  friend constexpr bool operator==(SignedAtom, SignedAtom) = default;
  friend constexpr auto operator<=>(SignedAtom a, SignedAtom b) { return a.code_ <=> b.code_; }

 private:
  std::uint32_t code_ = 0;
};

/// A disjunction of signed atoms kept sorted and duplicate-free.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<SignedAtom> literals);
  explicit Clause(std::vector<SignedAtom> literals);

  const std::vector<SignedAtom>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool contains(SignedAtom literal) const;
  bool is_tautology() const;
  std::size_t positive_count() const;
  /// True when every literal of this clause occurs in `other`.
  bool subsumes(const Clause& other) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) { return a.literals_ <=> b.literals_; }

 private:
  std::vector<SignedAtom> literals_;
};

std::string to_string(const Clause& clause, const AtomTable& atoms);

struct ClausalTheory {
  AtomTable atoms;
  std::vector<Clause> clauses;
  /// clause_origin[i] is the index of the formula clause i came from (first
  /// producer when several formulas yield the same clause).
  std::vector<std::size_t> clause_origin;
};

/// Conjunctive normal form of every formula (-> and <-> eliminated, negation
/// pushed to atoms, disjunction distributed); clauses deduplicated.
ClausalTheory to_clausal(std::span<const Formula> theory);
ClausalTheory to_clausal(std::span<const Formula> theory, AtomTable atoms);

/// (c1 \ {+pivot}) u (c2 \ {-pivot}). Throws PivotAbsent.
Clause resolve_step(const Clause& positive_side, const Clause& negative_side, std::uint32_t pivot);

struct SaturationOptions {
  std::size_t max_clauses = 100000;
  bool subsumption = true;
};

struct ResolutionStep {
  std::size_t resolvent;
  std::size_t positive_parent;
  std::size_t negative_parent;
  std::uint32_t pivot;
};

struct SaturationResult {
  bool satisfiable = true;
  AtomTable atoms;
  /// Every clause ever kept, by id. Input clauses come first.
  std::vector<Clause> clauses;
  std::size_t input_count = 0;
  std::vector<ResolutionStep> trace;
  std::size_t rounds = 0;

  /// Steps reaching the empty clause, in derivation order; empty when satisfiable.
  std::vector<ResolutionStep> refutation() const;
};

SaturationResult davis_putnam(const ClausalTheory& theory, const SaturationOptions& options = {});
SaturationResult davis_putnam(std::span<const Formula> theory, const SaturationOptions& options = {});

nlohmann::ordered_json to_json(const SaturationResult& result, bool refutation_only = false);

struct Entailment {
  bool entailed = false;
  SaturationResult proof;
};

/// T |= f  iff  T u {!f} is unsatisfiable.
Entailment entails(std::span<const Formula> theory, const Formula& query,
                   const SaturationOptions& options = {});

inline constexpr std::size_t kMaxOracleAtoms = 20;

/// Truth-table definition of T |= f over the opaque atoms. Throws TooManyAtoms.
bool brute_force_entails(std::span<const Formula> theory, const Formula& query);

/// Serial version of the same enumeration, kept as a cross-check.
bool brute_force_entails_serial(std::span<const Formula> theory, const Formula& query);

struct MinimalTheory {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
  Theory theory;
};

/// Single-pass removal of formulas entailed by the rest, in `order`
/// (a permutation of indices; empty means input order).
MinimalTheory minimal_theory(std::span<const Formula> theory,
                             std::span<const std::size_t> order = {},
                             const SaturationOptions& options = {});

enum class HornKind { Fact, Rule, Goal, NonHorn };

HornKind classify(const Clause& clause);
bool is_horn(const ClausalTheory& theory);

/// Forward chaining over definite clauses. Throws HornPreconditionFailed.
bool horn_satisfiable(const ClausalTheory& theory);

}  // namespace thy
