#include <algorithm>
#include <cmath>

#include "thy/errors.hpp"
#include "thy/model.hpp"

namespace thy {

namespace {

double as_real(const Value& v, const std::string& context) {
  const auto* d = std::get_if<double>(&v);
  if (!d) throw EvalError(EvalError::Kind::DomainError, context + ": expected a real value");
  return *d;
}

}  // namespace

Value evaluate_term(const Term& term, const Model& model, const Language& lang) {
  if (const auto* v = std::get_if<VariableRef>(&term.node)) {
    auto it = model.find(v->name);
    if (it == model.end())
      throw EvalError(EvalError::Kind::UnboundVariable, "variable '" + v->name + "' is unbound");
    const auto* decl = lang.find_variable(v->name);
    if (decl && decl->universe < lang.universes.size() &&
        !lang.universes[decl->universe].contains(it->second))
      throw EvalError(EvalError::Kind::DomainError,
                      "model value " + to_string(it->second) + " of '" + v->name +
                          "' is outside " + lang.universes[decl->universe].name);
    return it->second;
  }
  if (const auto* c = std::get_if<Constant>(&term.node)) return c->value;

  const auto& app = std::get<Application>(term.node);
  const std::size_t u = typecheck_term(term, lang);
  const FunctionDecl* f = lang.find_function(app.function, u);
  std::vector<double> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(as_real(evaluate_term(a, model, lang), app.function));

  double result = 0.0;
  switch (f->op) {
    case ArithmeticOp::Add: result = args[0] + args[1]; break;
    case ArithmeticOp::Subtract: result = args[0] - args[1]; break;
    case ArithmeticOp::Multiply: result = args[0] * args[1]; break;
    case ArithmeticOp::Divide:
      if (args[1] == 0.0)
        throw EvalError(EvalError::Kind::DomainError, "division by zero in " + to_string(term));
      result = args[0] / args[1];
      break;
    case ArithmeticOp::Negate: result = -args[0]; break;
  }
  const Universe& uni = lang.universes[u];
  if (!uni.contains(result))
    throw EvalError(EvalError::Kind::DomainError, to_string(term) + " evaluates to " +
                                                      to_string(Value{result}) +
                                                      ", outside " + uni.name);
  return result;
}

bool evaluate_atom(const Atom& atom, const Model& model, const Language& lang) {
  if (atom.args.empty()) {
    // A nullary symbol is read from the model as a boolean under its own name.
    auto it = model.find(atom.relation);
    if (it == model.end() || !std::holds_alternative<bool>(it->second))
      throw EvalError(EvalError::Kind::UnboundVariable,
                      "symbol '" + atom.relation + "' has no truth value in the model");
    return std::get<bool>(it->second);
  }
  typecheck_atom(atom, lang);
  const std::size_t u = typecheck_term(atom.args.front(), lang);
  const Universe& uni = lang.universes[u];
  const RelationDecl* rel = lang.find_relation(atom.relation, u);
  const Value a = evaluate_term(atom.args[0], model, lang);
  const Value b = evaluate_term(atom.args[1], model, lang);

  if (rel->kind == RelationKind::Equal) return a == b;
  if (uni.is_real()) {
    const double x = std::get<double>(a);
    const double y = std::get<double>(b);
    switch (rel->kind) {
      case RelationKind::Greater: return x > y;
      case RelationKind::Less: return x < y;
      case RelationKind::GreaterEqual: return x >= y;
      case RelationKind::LessEqual: return x <= y;
      default: break;
    }
  } else if (uni.is_enumeration()) {
    // Incomparable pairs evaluate to false.
    const auto& x = std::get<EnumValue>(a);
    const auto& y = std::get<EnumValue>(b);
    switch (rel->kind) {
      case RelationKind::Greater: return uni.order_greater(x, y);
      case RelationKind::Less: return uni.order_greater(y, x);
      case RelationKind::GreaterEqual: return x == y || uni.order_greater(x, y);
      case RelationKind::LessEqual: return x == y || uni.order_greater(y, x);
      default: break;
    }
  }
  throw EvalError(EvalError::Kind::DomainError,
                  "relation '" + atom.relation + "' has no interpretation on " + uni.name);
}

bool evaluate_formula(const Formula& formula, const Model& model, const Language& lang) {
  switch (formula.kind()) {
    case Formula::Kind::Atom: return evaluate_atom(formula.as_atom(), model, lang);
    case Formula::Kind::Not: return !evaluate_formula(formula.lhs(), model, lang);
    case Formula::Kind::And:
      return std::min(evaluate_formula(formula.lhs(), model, lang),
                      evaluate_formula(formula.rhs(), model, lang));
    case Formula::Kind::Or:
      return std::max(evaluate_formula(formula.lhs(), model, lang),
                      evaluate_formula(formula.rhs(), model, lang));
    case Formula::Kind::Implies:
      return !evaluate_formula(formula.lhs(), model, lang) ||
             evaluate_formula(formula.rhs(), model, lang);
    case Formula::Kind::Iff:
      return evaluate_formula(formula.lhs(), model, lang) ==
             evaluate_formula(formula.rhs(), model, lang);
  }
  return false;
}

}  // namespace thy
