#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thy/clausal.hpp"
#include "thy/errors.hpp"

namespace thy {

namespace {

enum class Op : std::uint8_t { Push, Not, And, Or, Implies, Iff };

struct Instr {
  Op op;
  std::uint32_t atom;
};

/// Postfix program of a formula over atom indices.
void compile(const Formula& f, const AtomTable& atoms, std::vector<Instr>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: out.push_back({Op::Push, *atoms.find(f.as_atom())}); return;
    case Formula::Kind::Not:
      compile(f.lhs(), atoms, out);
      out.push_back({Op::Not, 0});
      return;
    default:
      compile(f.lhs(), atoms, out);
      compile(f.rhs(), atoms, out);
      out.push_back({f.kind() == Formula::Kind::And       ? Op::And
                     : f.kind() == Formula::Kind::Or      ? Op::Or
                     : f.kind() == Formula::Kind::Implies ? Op::Implies
                                                          : Op::Iff,
                     0});
  }
}

bool run(const std::vector<Instr>& program, std::uint64_t assignment, std::vector<char>& stack) {
  std::size_t top = 0;
  for (const Instr& in : program) {
    switch (in.op) {
      case Op::Push: stack[top++] = static_cast<char>((assignment >> in.atom) & 1u); break;
      case Op::Not: stack[top - 1] = !stack[top - 1]; break;
      case Op::And: --top; stack[top - 1] = stack[top - 1] && stack[top]; break;
      case Op::Or: --top; stack[top - 1] = stack[top - 1] || stack[top]; break;
      case Op::Implies: --top; stack[top - 1] = !stack[top - 1] || stack[top]; break;
      case Op::Iff: --top; stack[top - 1] = stack[top - 1] == stack[top]; break;
    }
  }
  return stack[0] != 0;
}

struct Problem {
  std::vector<std::vector<Instr>> premises;
  std::vector<Instr> goal;
  std::size_t atom_count = 0;
  std::size_t stack_size = 1;
};

Problem prepare(std::span<const Formula> theory, const Formula& query) {
  Theory all(theory.begin(), theory.end());
  all.push_back(query);
  AtomTable atoms(atoms_of(all));
  if (atoms.size() > kMaxOracleAtoms)
    throw TooManyAtoms("truth-table oracle supports at most " + std::to_string(kMaxOracleAtoms) +
                       " atoms, got " + std::to_string(atoms.size()));
  Problem p;
  p.atom_count = atoms.size();
  for (const auto& f : theory) {
    p.premises.emplace_back();
    compile(f, atoms, p.premises.back());
    p.stack_size = std::max(p.stack_size, p.premises.back().size());
  }
  compile(query, atoms, p.goal);
  p.stack_size = std::max(p.stack_size, p.goal.size());
  return p;
}

bool counterexample(const Problem& p, std::uint64_t assignment, std::vector<char>& stack) {
  for (const auto& prem : p.premises)
    if (!run(prem, assignment, stack)) return false;
  return !run(p.goal, assignment, stack);
}

}  // namespace

bool brute_force_entails(std::span<const Formula> theory, const Formula& query) {
  const Problem p = prepare(theory, query);
  const std::int64_t rows = std::int64_t{1} << p.atom_count;
  bool refuted = false;
#pragma omp parallel reduction(|| : refuted)
  {
    std::vector<char> stack(p.stack_size);
#pragma omp for schedule(static)
    for (std::int64_t a = 0; a < rows; ++a)
      if (!refuted && counterexample(p, static_cast<std::uint64_t>(a), stack)) refuted = true;
  }
  return !refuted;
}

bool brute_force_entails_serial(std::span<const Formula> theory, const Formula& query) {
  const Problem p = prepare(theory, query);
  std::vector<char> stack(p.stack_size);
  const std::uint64_t rows = std::uint64_t{1} << p.atom_count;
  for (std::uint64_t a = 0; a < rows; ++a)
    if (counterexample(p, a, stack)) return false;
  return true;
}

}  // namespace thy
