#pragma once

// Typed propositional language: universes, variables, functions, relations,
// terms, atoms, formulas and the truth valuation induced by a model.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace thy {

/// Value token of an enumerated universe. A plain token has one component,
/// a tuple token such as (Daily, High) has several.
using EnumValue = std::vector<std::string>;

using Value = std::variant<double, bool, EnumValue>;

std::string to_string(const Value& value);

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const RealInterval&) const = default;
};

struct BooleanCarrier {
  bool operator==(const BooleanCarrier&) const = default;
};

struct Enumeration {
  std::vector<EnumValue> values;
  bool operator==(const Enumeration&) const = default;
};

using Carrier = std::variant<RealInterval, BooleanCarrier, Enumeration>;

/// A declared strict order pair: `greater > lesser`.
struct OrderPair {
  EnumValue greater;
  EnumValue lesser;
  bool operator==(const OrderPair&) const = default;
};

struct Universe {
  std::string name;
  Carrier carrier;
  std::vector<OrderPair> order;

  bool is_real() const { return std::holds_alternative<RealInterval>(carrier); }
  bool is_boolean() const { return std::holds_alternative<BooleanCarrier>(carrier); }
  bool is_enumeration() const { return std::holds_alternative<Enumeration>(carrier); }

  bool contains(const Value& value) const;
  /// `a > b` under the transitive closure of the declared order.
  bool order_greater(const EnumValue& a, const EnumValue& b) const;

  bool operator==(const Universe&) const = default;
};

struct VariableDecl {
  std::string name;
  std::size_t universe = 0;
  bool operator==(const VariableDecl&) const = default;
};

enum class ArithmeticOp { Add, Subtract, Multiply, Divide, Negate };

struct FunctionDecl {
  std::string name;
  std::size_t universe = 0;
  std::size_t arity = 0;
  ArithmeticOp op = ArithmeticOp::Add;
  bool operator==(const FunctionDecl&) const = default;
};

enum class RelationKind { Equal, Greater, Less, GreaterEqual, LessEqual, Nullary };

struct RelationDecl {
  std::string name;
  /// Empty for nullary relations (plain propositional symbols).
  std::optional<std::size_t> universe;
  std::size_t arity = 0;
  RelationKind kind = RelationKind::Equal;
  bool operator==(const RelationDecl&) const = default;
};

/// L = (U, V, F, R). Build with make_language() so that the arithmetic
/// functions and comparison relations follow from the universes.
struct Language {
  std::vector<Universe> universes;
  std::vector<VariableDecl> variables;
  std::vector<FunctionDecl> functions;
  std::vector<RelationDecl> relations;

  const VariableDecl* find_variable(std::string_view name) const;
  const RelationDecl* find_relation(std::string_view name,
                                    std::optional<std::size_t> universe) const;
  const FunctionDecl* find_function(std::string_view name, std::size_t universe) const;
  std::optional<std::size_t> find_universe(std::string_view name) const;
  bool has_function_named(std::string_view name) const;
  /// Declared nullary relations, in declaration order.
  std::vector<std::string> symbols() const;

  bool operator==(const Language&) const = default;
};

/// Derives F and R from the universes: real universes get + - * / neg and
/// = > < >= <=; booleans get =; enumerations get = plus the order relations
/// when an order is declared. `symbols` become nullary relations.
Language make_language(std::vector<Universe> universes,
                       std::vector<VariableDecl> variables,
                       std::vector<std::string> symbols = {});

struct LanguageIssue {
  std::string element;
  std::string message;
};

std::vector<LanguageIssue> validate_language(const Language& lang);

// ---------------------------------------------------------------------------
// Terms

struct Term;

struct VariableRef {
  std::string name;
};

struct Constant {
  std::size_t universe = 0;
  Value value;
};

struct Application {
  std::string function;
  std::vector<Term> args;
};

struct Term {
  std::variant<VariableRef, Constant, Application> node;

  static Term variable(std::string name);
  static Term constant(std::size_t universe, Value value);
  static Term apply(std::string function, std::vector<Term> args);
};

bool operator==(const Term& a, const Term& b);

std::size_t typecheck_term(const Term& term, const Language& lang);

// ---------------------------------------------------------------------------
// Atoms and formulas

struct Atom {
  std::string relation;
  std::vector<Term> args;
  std::optional<std::size_t> universe;

  static Atom symbol(std::string name);
  static Atom binary(std::string relation, std::size_t universe, Term lhs, Term rhs);
};

bool operator==(const Atom& a, const Atom& b);

class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff };

  static Formula atom(Atom a);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Kind kind() const;
  const Atom& as_atom() const;
  /// Operand of Not, or left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool operator==(const Formula& a, const Formula& b);

using Theory = std::vector<Formula>;

/// Canonical text used for display, atom identity and the DSL renderer.
std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Formula& formula);

/// Identity key of an atom: its text qualified by its universe.
std::string atom_key(const Atom& atom);

void typecheck_atom(const Atom& atom, const Language& lang);
void typecheck_formula(const Formula& formula, const Language& lang);

/// Distinct atoms in first-occurrence order; identity is syntactic.
std::vector<Atom> atoms_of(const Formula& formula);
std::vector<Atom> atoms_of(std::span<const Formula> theory);

// ---------------------------------------------------------------------------
// Semantics

using Model = std::map<std::string, Value, std::less<>>;

Value evaluate_term(const Term& term, const Model& model, const Language& lang);
bool evaluate_atom(const Atom& atom, const Model& model, const Language& lang);
bool evaluate_formula(const Formula& formula, const Model& model, const Language& lang);

// ---------------------------------------------------------------------------
// Traceability metadata (never read by deduction)

enum class DerivationSource { Data, Abductive };
enum class VariableShape { Scalar, Collection };

struct Dimension {
  std::string variable;
  DerivationSource source = DerivationSource::Data;
  VariableShape shape = VariableShape::Scalar;
  std::string universe;
  bool operator==(const Dimension&) const = default;
};

struct ConstructRecord {
  std::string name;
  std::vector<std::string> derived_from;
  std::string definition;
  std::vector<Dimension> dimensions;

  bool multidimensional() const { return dimensions.size() >= 2; }
  bool operator==(const ConstructRecord&) const = default;
};

}  // namespace thy
