#include "thy/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "format.hpp"
#include "thy/errors.hpp"

namespace thy {

namespace {

std::string enum_text(const EnumValue& v) {
  if (v.size() == 1) return v.front();
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out + ")";
}

const char* relation_symbol(RelationKind kind) {
  switch (kind) {
    case RelationKind::Equal: return "=";
    case RelationKind::Greater: return ">";
    case RelationKind::Less: return "<";
    case RelationKind::GreaterEqual: return ">=";
    case RelationKind::LessEqual: return "<=";
    case RelationKind::Nullary: return "";
  }
  return "";
}

}  // namespace

std::string to_string(const Value& value) {
  if (const auto* d = std::get_if<double>(&value)) return detail::format_number(*d);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "True" : "False";
  return enum_text(std::get<EnumValue>(value));
}

// ---------------------------------------------------------------------------
// Universe

bool Universe::contains(const Value& value) const {
  return std::visit(
      [&](const auto& c) -> bool {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, RealInterval>) {
          const auto* d = std::get_if<double>(&value);
          return d && *d >= c.lo && *d <= c.hi;
        } else if constexpr (std::is_same_v<C, BooleanCarrier>) {
          return std::holds_alternative<bool>(value);
        } else {
          const auto* e = std::get_if<EnumValue>(&value);
          return e && std::find(c.values.begin(), c.values.end(), *e) != c.values.end();
        }
      },
      carrier);
}

bool Universe::order_greater(const EnumValue& a, const EnumValue& b) const {
  // Breadth-first search from `a` along declared pairs.
  std::deque<const EnumValue*> queue{&a};
  std::set<EnumValue> seen{a};
  while (!queue.empty()) {
    const EnumValue* cur = queue.front();
    queue.pop_front();
    for (const auto& pair : order) {
      if (pair.greater != *cur) continue;
      if (pair.lesser == b) return true;
      if (seen.insert(pair.lesser).second) queue.push_back(&pair.lesser);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Language

const VariableDecl* Language::find_variable(std::string_view name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

const RelationDecl* Language::find_relation(std::string_view name,
                                            std::optional<std::size_t> universe) const {
  for (const auto& r : relations)
    if (r.name == name && r.universe == universe) return &r;
  return nullptr;
}

const FunctionDecl* Language::find_function(std::string_view name, std::size_t universe) const {
  for (const auto& f : functions)
    if (f.name == name && f.universe == universe) return &f;
  return nullptr;
}

std::optional<std::size_t> Language::find_universe(std::string_view name) const {
  for (std::size_t i = 0; i < universes.size(); ++i)
    if (universes[i].name == name) return i;
  return std::nullopt;
}

bool Language::has_function_named(std::string_view name) const {
  return std::any_of(functions.begin(), functions.end(),
                     [&](const FunctionDecl& f) { return f.name == name; });
}

std::vector<std::string> Language::symbols() const {
  std::vector<std::string> out;
  for (const auto& r : relations)
    if (r.kind == RelationKind::Nullary) out.push_back(r.name);
  return out;
}

Language make_language(std::vector<Universe> universes, std::vector<VariableDecl> variables,
                       std::vector<std::string> symbols) {
  Language lang;
  lang.universes = std::move(universes);
  lang.variables = std::move(variables);
  for (std::size_t u = 0; u < lang.universes.size(); ++u) {
    const Universe& uni = lang.universes[u];
    auto add_rel = [&](RelationKind kind) {
      lang.relations.push_back({relation_symbol(kind), u, 2, kind});
    };
    add_rel(RelationKind::Equal);
    if (uni.is_real() || (uni.is_enumeration() && !uni.order.empty())) {
      add_rel(RelationKind::Greater);
      add_rel(RelationKind::Less);
      add_rel(RelationKind::GreaterEqual);
      add_rel(RelationKind::LessEqual);
    }
    if (uni.is_real()) {
      lang.functions.push_back({"+", u, 2, ArithmeticOp::Add});
      lang.functions.push_back({"-", u, 2, ArithmeticOp::Subtract});
      lang.functions.push_back({"*", u, 2, ArithmeticOp::Multiply});
      lang.functions.push_back({"/", u, 2, ArithmeticOp::Divide});
      lang.functions.push_back({"neg", u, 1, ArithmeticOp::Negate});
    }
  }
  for (auto& s : symbols)
    lang.relations.push_back({std::move(s), std::nullopt, 0, RelationKind::Nullary});
  return lang;
}

std::vector<LanguageIssue> validate_language(const Language& lang) {
  std::vector<LanguageIssue> issues;
  const std::size_t n = lang.universes.size();

  std::set<std::string> names;
  for (const auto& u : lang.universes) {
    const std::string el = "universe " + u.name;
    if (!names.insert(u.name).second) issues.push_back({el, "duplicate universe name"});
    if (const auto* r = std::get_if<RealInterval>(&u.carrier)) {
      if (!std::isfinite(r->lo) || !std::isfinite(r->hi))
        issues.push_back({el, "interval bounds must be finite"});
      else if (r->lo > r->hi)
        issues.push_back({el, "interval requires lo <= hi"});
    }
    if (const auto* e = std::get_if<Enumeration>(&u.carrier)) {
      std::set<EnumValue> seen;
      for (const auto& v : e->values) {
        if (v.empty()) issues.push_back({el, "empty enumeration value"});
        if (!seen.insert(v).second)
          issues.push_back({el, "duplicate enumeration value " + enum_text(v)});
      }
    }
    if (!u.order.empty()) {
      if (!u.is_enumeration()) {
        issues.push_back({el, "declared order requires an enumerated universe"});
        continue;
      }
      bool members_ok = true;
      for (const auto& p : u.order) {
        if (p.greater == p.lesser)
          issues.push_back({el, "order pair " + enum_text(p.greater) + " > " +
                                    enum_text(p.lesser) + " is reflexive"});
        for (const auto* v : {&p.greater, &p.lesser}) {
          if (!u.contains(*v)) {
            issues.push_back({el, "order mentions unknown value " + enum_text(*v)});
            members_ok = false;
          }
        }
      }
      if (members_ok) {
        const auto& values = std::get<Enumeration>(u.carrier).values;
        for (std::size_t i = 0; i < values.size(); ++i)
          for (std::size_t j = i + 1; j < values.size(); ++j)
            if (u.order_greater(values[i], values[j]) && u.order_greater(values[j], values[i]))
              issues.push_back({el, "order is cyclic between " + enum_text(values[i]) +
                                        " and " + enum_text(values[j])});
      }
    }
  }

  names.clear();
  for (const auto& v : lang.variables) {
    const std::string el = "variable " + v.name;
    if (!names.insert(v.name).second) issues.push_back({el, "duplicate variable name"});
    if (v.universe >= n)
      issues.push_back({el, "references universe index " + std::to_string(v.universe) +
                                " of " + std::to_string(n)});
  }

  std::set<std::pair<std::string, std::size_t>> fkeys;
  for (const auto& f : lang.functions) {
    const std::string el = "function " + f.name;
    if (f.universe >= n)
      issues.push_back({el, "references universe index " + std::to_string(f.universe) +
                                " of " + std::to_string(n)});
    if (!fkeys.insert({f.name, f.universe}).second)
      issues.push_back({el, "duplicate function in its universe"});
    if (f.arity == 0) issues.push_back({el, "function arity must be positive"});
  }

  std::set<std::pair<std::string, std::optional<std::size_t>>> rkeys;
  for (const auto& r : lang.relations) {
    const std::string el = "relation " + r.name;
    if (!rkeys.insert({r.name, r.universe}).second)
      issues.push_back({el, "duplicate relation in its universe"});
    if (r.kind == RelationKind::Nullary) {
      if (r.arity != 0 || r.universe) issues.push_back({el, "nullary relation must be untyped"});
      if (lang.find_variable(r.name))
        issues.push_back({el, "symbol clashes with a variable of the same name"});
      continue;
    }
    if (!r.universe || *r.universe >= n)
      issues.push_back({el, "references a missing universe"});
    if (r.arity != 2) issues.push_back({el, "comparison relations are binary"});
  }

  for (std::size_t u = 0; u < n; ++u)
    if (!lang.find_relation("=", u))
      issues.push_back({"universe " + lang.universes[u].name, "missing equality relation"});
  return issues;
}

// ---------------------------------------------------------------------------
// Terms

Term Term::variable(std::string name) { return Term{VariableRef{std::move(name)}}; }

Term Term::constant(std::size_t universe, Value value) {
  return Term{Constant{universe, std::move(value)}};
}

Term Term::apply(std::string function, std::vector<Term> args) {
  return Term{Application{std::move(function), std::move(args)}};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* v = std::get_if<VariableRef>(&a.node))
    return v->name == std::get<VariableRef>(b.node).name;
  if (const auto* c = std::get_if<Constant>(&a.node)) {
    const auto& d = std::get<Constant>(b.node);
    return c->universe == d.universe && c->value == d.value;
  }
  const auto& x = std::get<Application>(a.node);
  const auto& y = std::get<Application>(b.node);
  return x.function == y.function && x.args == y.args;
}

std::size_t typecheck_term(const Term& term, const Language& lang) {
  if (const auto* v = std::get_if<VariableRef>(&term.node)) {
    const auto* decl = lang.find_variable(v->name);
    if (!decl) throw TypeError(TypeError::Kind::UnknownName, "unknown variable '" + v->name + "'");
    return decl->universe;
  }
  if (const auto* c = std::get_if<Constant>(&term.node)) {
    if (c->universe >= lang.universes.size())
      throw TypeError(TypeError::Kind::UnknownName,
                      "constant refers to missing universe " + std::to_string(c->universe));
    const Universe& u = lang.universes[c->universe];
    if (!u.contains(c->value))
      throw TypeError(TypeError::Kind::TypeMismatch,
                      "value " + to_string(c->value) + " is not in universe " + u.name);
    return c->universe;
  }
  const auto& app = std::get<Application>(term.node);
  if (!lang.has_function_named(app.function))
    throw TypeError(TypeError::Kind::UnknownName, "unknown function '" + app.function + "'");
  if (app.args.empty())
    throw TypeError(TypeError::Kind::ArityMismatch, "function '" + app.function + "' needs arguments");
  const std::size_t u = typecheck_term(app.args.front(), lang);
  for (std::size_t i = 1; i < app.args.size(); ++i) {
    if (typecheck_term(app.args[i], lang) != u)
      throw TypeError(TypeError::Kind::TypeMismatch,
                      "arguments of '" + app.function + "' live in different universes");
  }
  const auto* f = lang.find_function(app.function, u);
  if (!f)
    throw TypeError(TypeError::Kind::TypeMismatch, "function '" + app.function +
                                                       "' is not defined on universe " +
                                                       lang.universes[u].name);
  if (f->arity != app.args.size())
    throw TypeError(TypeError::Kind::ArityMismatch,
                    "function '" + app.function + "' takes " + std::to_string(f->arity) +
                        " arguments, got " + std::to_string(app.args.size()));
  return u;
}

// ---------------------------------------------------------------------------
// Atoms and formulas

Atom Atom::symbol(std::string name) { return Atom{std::move(name), {}, std::nullopt}; }

Atom Atom::binary(std::string relation, std::size_t universe, Term lhs, Term rhs) {
  std::vector<Term> args;
  args.push_back(std::move(lhs));
  args.push_back(std::move(rhs));
  return Atom{std::move(relation), std::move(args), universe};
}

bool operator==(const Atom& a, const Atom& b) {
  return a.relation == b.relation && a.universe == b.universe && a.args == b.args;
}

struct Formula::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, {}}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(f), {}}));
}
Formula Formula::conjunction(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(l), std::move(r)}));
}
Formula Formula::disjunction(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(l), std::move(r)}));
}
Formula Formula::implication(Formula l, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, {}, std::move(l), std::move(r)}));
}
Formula Formula::equivalence(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, std::move(l), std::move(r)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Atom& Formula::as_atom() const { return *node_->atom; }
const Formula& Formula::lhs() const { return *node_->left; }
const Formula& Formula::rhs() const { return *node_->right; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: return a.as_atom() == b.as_atom();
    case Formula::Kind::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

bool is_infix(const Application& app) {
  return app.args.size() == 2 &&
         (app.function == "+" || app.function == "-" || app.function == "*" ||
          app.function == "/");
}

int term_precedence(const Term& t) {
  if (const auto* app = std::get_if<Application>(&t.node)) {
    if (is_infix(*app)) return (app->function == "+" || app->function == "-") ? 1 : 2;
    if (app->function == "neg" && app->args.size() == 1) return 3;
  }
  if (const auto* c = std::get_if<Constant>(&t.node)) {
    const auto* d = std::get_if<double>(&c->value);
    if (d && std::signbit(*d) && *d != 0.0) return 3;  // "-5" reads as a unary form
  }
  return 4;
}

void write_term(std::ostream& os, const Term& t);

void write_wrapped(std::ostream& os, const Term& t, bool wrap) {
  if (wrap) os << '(';
  write_term(os, t);
  if (wrap) os << ')';
}

void write_term(std::ostream& os, const Term& t) {
  if (const auto* v = std::get_if<VariableRef>(&t.node)) {
    os << v->name;
  } else if (const auto* c = std::get_if<Constant>(&t.node)) {
    os << to_string(c->value);
  } else {
    const auto& app = std::get<Application>(t.node);
    if (is_infix(app)) {
      const int p = term_precedence(t);
      write_wrapped(os, app.args[0], term_precedence(app.args[0]) < p);
      os << ' ' << app.function << ' ';
      write_wrapped(os, app.args[1], term_precedence(app.args[1]) <= p);
    } else if (app.function == "neg" && app.args.size() == 1) {
      const Term& arg = app.args[0];
      const bool numeric = std::holds_alternative<Constant>(arg.node) &&
                           std::holds_alternative<double>(std::get<Constant>(arg.node).value);
      os << '-';
      write_wrapped(os, arg, numeric || term_precedence(arg) < 3);
    } else {
      os << app.function << '(';
      for (std::size_t i = 0; i < app.args.size(); ++i) {
        if (i) os << ", ";
        write_term(os, app.args[i]);
      }
      os << ')';
    }
  }
}

void write_atom(std::ostream& os, const Atom& a) {
  if (a.args.empty()) {
    os << a.relation;
  } else if (a.args.size() == 2) {
    write_term(os, a.args[0]);
    os << ' ' << a.relation << ' ';
    write_term(os, a.args[1]);
  } else {
    os << a.relation << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ", ";
      write_term(os, a.args[i]);
    }
    os << ')';
  }
}

int formula_precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    case Formula::Kind::Atom: return 6;
  }
  return 6;
}

const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return "<->";
    case Formula::Kind::Implies: return "->";
    case Formula::Kind::Or: return "|";
    case Formula::Kind::And: return "&";
    default: return "";
  }
}

void write_formula(std::ostream& os, const Formula& f);

void write_formula_wrapped(std::ostream& os, const Formula& f, bool wrap) {
  if (wrap) os << '(';
  write_formula(os, f);
  if (wrap) os << ')';
}

void write_formula(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      write_atom(os, f.as_atom());
      return;
    case Formula::Kind::Not: {
      const Formula& op = f.lhs();
      os << '!';
      const bool bare = (op.kind() == Formula::Kind::Atom && op.as_atom().args.empty()) ||
                        op.kind() == Formula::Kind::Not;
      write_formula_wrapped(os, op, !bare);
      return;
    }
    default: {
      const int p = formula_precedence(f.kind());
      const int pl = formula_precedence(f.lhs().kind());
      const int pr = formula_precedence(f.rhs().kind());
      // -> associates to the right, every other connective to the left.
      const bool right_assoc = f.kind() == Formula::Kind::Implies;
      write_formula_wrapped(os, f.lhs(), right_assoc ? pl <= p : pl < p);
      os << ' ' << connective(f.kind()) << ' ';
      write_formula_wrapped(os, f.rhs(), right_assoc ? pr < p : pr <= p);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& term) {
  std::ostringstream os;
  write_term(os, term);
  return os.str();
}

std::string to_string(const Atom& atom) {
  std::ostringstream os;
  write_atom(os, atom);
  return os.str();
}

std::string to_string(const Formula& formula) {
  std::ostringstream os;
  write_formula(os, formula);
  return os.str();
}

std::string atom_key(const Atom& atom) {
  std::string key = to_string(atom);
  if (atom.universe) key += "@" + std::to_string(*atom.universe);
  return key;
}

void typecheck_atom(const Atom& atom, const Language& lang) {
  if (atom.args.empty()) {
    const auto* r = lang.find_relation(atom.relation, std::nullopt);
    if (!r) throw TypeError(TypeError::Kind::UnknownName, "unknown symbol '" + atom.relation + "'");
    return;
  }
  std::optional<std::size_t> u;
  for (const auto& t : atom.args) {
    const std::size_t tu = typecheck_term(t, lang);
    if (u && *u != tu)
      throw TypeError(TypeError::Kind::TypeMismatch,
                      "type mismatch in '" + to_string(atom) + "': " + lang.universes[*u].name +
                          " vs " + lang.universes[tu].name);
    u = tu;
  }
  if (atom.universe && atom.universe != u)
    throw TypeError(TypeError::Kind::TypeMismatch,
                    "atom '" + to_string(atom) + "' is tagged with the wrong universe");
  const auto* r = lang.find_relation(atom.relation, u);
  if (!r)
    throw TypeError(TypeError::Kind::UnknownName, "relation '" + atom.relation +
                                                      "' is not defined on universe " +
                                                      lang.universes[*u].name);
  if (r->arity != atom.args.size())
    throw TypeError(TypeError::Kind::ArityMismatch,
                    "relation '" + atom.relation + "' takes " + std::to_string(r->arity) +
                        " arguments");
}

void typecheck_formula(const Formula& formula, const Language& lang) {
  switch (formula.kind()) {
    case Formula::Kind::Atom: typecheck_atom(formula.as_atom(), lang); return;
    case Formula::Kind::Not: typecheck_formula(formula.lhs(), lang); return;
    default:
      typecheck_formula(formula.lhs(), lang);
      typecheck_formula(formula.rhs(), lang);
  }
}

namespace {

void collect_atoms(const Formula& f, std::vector<Atom>& out, std::unordered_set<std::string>& seen) {
  if (f.kind() == Formula::Kind::Atom) {
    const Atom& a = f.as_atom();
    if (seen.insert(atom_key(a)).second) out.push_back(a);
    return;
  }
  collect_atoms(f.lhs(), out, seen);
  if (f.kind() != Formula::Kind::Not) collect_atoms(f.rhs(), out, seen);
}

}  // namespace

std::vector<Atom> atoms_of(const Formula& formula) {
  std::vector<Atom> out;
  std::unordered_set<std::string> seen;
  collect_atoms(formula, out, seen);
  return out;
}

std::vector<Atom> atoms_of(std::span<const Formula> theory) {
  std::vector<Atom> out;
  std::unordered_set<std::string> seen;
  for (const auto& f : theory) collect_atoms(f, out, seen);
  return out;
}

}  // namespace thy
