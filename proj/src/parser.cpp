#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <set>
#include <unordered_map>

#include "format.hpp"
#include "lexer.hpp"
#include "thy/dsl.hpp"
#include "thy/errors.hpp"

namespace thy {

std::string to_string(const Diagnostic& d) {
  return std::to_string(d.location.line) + ":" + std::to_string(d.location.column) + ": " +
         (d.severity == Severity::Error ? "error: " : "warning: ") + d.message;
}

Theory TheoryDocument::theory() const {
  Theory t;
  t.reserve(hypotheses.size());
  for (const auto& h : hypotheses) t.push_back(h.formula);
  return t;
}

std::optional<std::size_t> TheoryDocument::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    if (hypotheses[i].id == id) return i;
  return std::nullopt;
}

bool TheoryDocument::operator==(const TheoryDocument& other) const {
  return language == other.language && constructs == other.constructs &&
         hypotheses == other.hypotheses;
}

namespace {

using detail::Tok;
using detail::Token;

constexpr std::size_t kMaxDepth = 256;

// ---------------------------------------------------------------------------
// Raw syntax trees, before names and types are resolved.

struct RawTerm;
using RawTermPtr = std::shared_ptr<const RawTerm>;

struct RawTerm {
  enum class Kind { Number, Ident, Tuple, Binary, Neg } kind;
  std::string text;
  double number = 0.0;
  std::vector<std::string> parts;
  char op = 0;
  RawTermPtr lhs, rhs;
  SourceLocation loc;
};

struct RawFormula;
using RawFormulaPtr = std::shared_ptr<const RawFormula>;

struct RawFormula {
  enum class Kind { Symbol, Compare, Not, And, Or, Implies, Iff } kind;
  std::string name;  // symbol name or relation spelling
  RawTermPtr a, b;
  RawFormulaPtr l, r;
  SourceLocation loc;
};

struct RawType {
  std::string name;
  SourceLocation loc;
  enum class Kind { Real, Bool, Enum } kind = Kind::Bool;
  double lo = 0, hi = 0;
  std::vector<EnumValue> values;
  std::vector<OrderPair> order;
};

struct Named {
  std::string name;
  SourceLocation loc;
};

struct RawVar {
  std::vector<Named> names;
  Named type;
};

struct RawDim {
  Named variable;
  DerivationSource source = DerivationSource::Data;
  VariableShape shape = VariableShape::Scalar;
};

struct RawConstruct {
  Named name;
  std::vector<std::string> derives;
  std::optional<std::string> definition;
  std::vector<RawDim> dims;
};

struct RawProp {
  Named id;
  RawFormulaPtr formula;
};

struct RawDocument {
  std::vector<RawType> types;
  std::vector<RawVar> vars;
  std::vector<Named> symbols;
  std::vector<RawConstruct> constructs;
  std::vector<RawProp> props;
};

const std::set<std::string, std::less<>> kStatementKeywords = {"type", "var", "atom", "construct",
                                                               "prop"};

bool reserved(std::string_view name) {
  return kStatementKeywords.count(name) || name == "True" || name == "False";
}

struct Failure {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(SourceLocation loc, std::string message) {
  throw Failure{{Severity::Error, std::move(message), loc}};
}

// ---------------------------------------------------------------------------
// Syntax

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  RawDocument document(std::vector<Diagnostic>& diags) {
    RawDocument doc;
    while (peek().kind != Tok::End) {
      const std::size_t start = pos_;
      try {
        statement(doc);
      } catch (const Failure& f) {
        diags.push_back(f.diagnostic);
        if (pos_ == start) ++pos_;
        while (peek().kind != Tok::End &&
               !(peek().kind == Tok::Ident && kStatementKeywords.count(peek().text)))
          ++pos_;
      }
    }
    return doc;
  }

  RawFormulaPtr lone_formula() {
    RawFormulaPtr f = formula();
    if (peek().kind != Tok::End) fail(peek().loc, "unexpected " + shown(peek()) + " after formula");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  // Outcome of trying `( formula )` at a token position; null when it failed.
  std::unordered_map<std::size_t, std::pair<RawFormulaPtr, std::size_t>> paren_memo_;

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) {
        --p_.depth_;
        fail(p_.peek().loc, "nesting deeper than " + std::to_string(kMaxDepth) + " levels");
      }
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }

  static std::string shown(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
    return detail::describe(t.kind);
  }

  const Token& expect(Tok k, std::string_view context) {
    if (!at(k))
      fail(peek().loc, std::string("expected ") + detail::describe(k) + " " + std::string(context) +
                           ", found " + shown(peek()));
    return toks_[pos_++];
  }

  void expect_word(std::string_view w, std::string_view context) {
    if (!at_word(w))
      fail(peek().loc, "expected '" + std::string(w) + "' " + std::string(context) + ", found " +
                           shown(peek()));
    ++pos_;
  }

  Named name(std::string_view what) {
    const Token& t = expect(Tok::Ident, what);
    if (reserved(t.text)) fail(t.loc, "'" + t.text + "' is a reserved word");
    return {t.text, t.loc};
  }

  double number_value(const Token& t, bool negative) {
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size() || !std::isfinite(v))
      fail(t.loc, "number '" + t.text + "' is out of range");
    return negative ? -v : v;
  }

  double signed_number(std::string_view context) {
    const bool negative = at(Tok::Minus);
    if (negative) ++pos_;
    return number_value(expect(Tok::Number, context), negative);
  }

  void statement(RawDocument& doc) {
    const Token& kw = peek();
    if (!at(Tok::Ident) || !kStatementKeywords.count(kw.text))
      fail(kw.loc, "expected a declaration (type, var, atom, construct or prop), found " + shown(kw));
    ++pos_;
    if (kw.text == "type") doc.types.push_back(type_decl());
    else if (kw.text == "var") doc.vars.push_back(var_decl());
    else if (kw.text == "atom") {
      do doc.symbols.push_back(name("in atom declaration"));
      while (at(Tok::Comma) && (++pos_, true));
    } else if (kw.text == "construct") doc.constructs.push_back(construct_decl());
    else {
      RawProp p;
      p.id = name("as proposition identifier");
      expect(Tok::Colon, "after proposition identifier");
      p.formula = formula();
      doc.props.push_back(std::move(p));
    }
  }

  EnumValue enum_value() {
    if (at(Tok::LParen)) {
      ++pos_;
      EnumValue v;
      do v.push_back(expect(Tok::Ident, "in tuple value").text);
      while (at(Tok::Comma) && (++pos_, true));
      expect(Tok::RParen, "closing tuple value");
      return v;
    }
    return {expect(Tok::Ident, "as enumeration value").text};
  }

  RawType type_decl() {
    RawType t;
    Named n = name("as type name");
    t.name = n.name;
    t.loc = n.loc;
    expect(Tok::Eq, "after type name");
    if (at_word("real")) {
      ++pos_;
      t.kind = RawType::Kind::Real;
      expect(Tok::LBracket, "after 'real'");
      t.lo = signed_number("as lower bound");
      expect(Tok::Comma, "between interval bounds");
      t.hi = signed_number("as upper bound");
      expect(Tok::RBracket, "closing interval");
    } else if (at_word("bool")) {
      ++pos_;
      t.kind = RawType::Kind::Bool;
    } else if (at(Tok::LBrace)) {
      ++pos_;
      t.kind = RawType::Kind::Enum;
      do t.values.push_back(enum_value());
      while (at(Tok::Comma) && (++pos_, true));
      expect(Tok::RBrace, "closing enumeration");
    } else {
      fail(peek().loc, "expected 'real[lo, hi]', 'bool' or '{ values }', found " + shown(peek()));
    }
    if (at_word("order")) {
      ++pos_;
      expect(Tok::LBrace, "after 'order'");
      while (!at(Tok::RBrace)) {
        OrderPair p;
        p.greater = enum_value();
        expect(Tok::Gt, "in order pair");
        p.lesser = enum_value();
        t.order.push_back(std::move(p));
        if (!at(Tok::Semi)) break;
        ++pos_;
      }
      expect(Tok::RBrace, "closing order");
    }
    return t;
  }

  RawVar var_decl() {
    RawVar v;
    do v.names.push_back(name("as variable name"));
    while (at(Tok::Comma) && (++pos_, true));
    expect(Tok::Colon, "after variable names");
    const Token& t = expect(Tok::Ident, "as type name");
    v.type = {t.text, t.loc};
    return v;
  }

  RawConstruct construct_decl() {
    RawConstruct c;
    c.name = name("as construct name");
    expect(Tok::LBrace, "opening construct body");
    while (!at(Tok::RBrace)) {
      if (at_word("derives")) {
        ++pos_;
        do c.derives.push_back(expect(Tok::String, "after 'derives'").text);
        while (at(Tok::Comma) && (++pos_, true));
      } else if (at_word("def")) {
        const SourceLocation loc = peek().loc;
        ++pos_;
        if (c.definition) fail(loc, "construct '" + c.name.name + "' has two definitions");
        c.definition = expect(Tok::String, "after 'def'").text;
      } else if (at_word("dim")) {
        ++pos_;
        RawDim d;
        const Token& v = expect(Tok::Ident, "as dimension variable");
        d.variable = {v.text, v.loc};
        expect_word("from", "in dimension");
        if (at_word("data")) d.source = DerivationSource::Data;
        else if (at_word("abductive")) d.source = DerivationSource::Abductive;
        else fail(peek().loc, "expected 'data' or 'abductive', found " + shown(peek()));
        ++pos_;
        expect_word("shape", "in dimension");
        if (at_word("scalar")) d.shape = VariableShape::Scalar;
        else if (at_word("collection")) d.shape = VariableShape::Collection;
        else fail(peek().loc, "expected 'scalar' or 'collection', found " + shown(peek()));
        ++pos_;
        c.dims.push_back(std::move(d));
      } else {
        fail(peek().loc, "expected 'derives', 'def', 'dim' or '}', found " + shown(peek()));
      }
      expect(Tok::Semi, "after construct item");
    }
    ++pos_;
    return c;
  }

  // Formulas ---------------------------------------------------------------

  static RawFormulaPtr node(RawFormula::Kind k, SourceLocation loc, RawFormulaPtr l,
                            RawFormulaPtr r = nullptr) {
    auto f = std::make_shared<RawFormula>();
    f->kind = k;
    f->loc = loc;
    f->l = std::move(l);
    f->r = std::move(r);
    return f;
  }

  RawFormulaPtr formula() {
    DepthGuard guard(*this);
    RawFormulaPtr f = implication();
    while (at(Tok::DArrow)) {
      const SourceLocation loc = peek().loc;
      ++pos_;
      f = node(RawFormula::Kind::Iff, loc, f, implication());
    }
    return f;
  }

  RawFormulaPtr implication() {
    DepthGuard guard(*this);
    RawFormulaPtr f = disjunction();
    if (at(Tok::Arrow)) {
      const SourceLocation loc = peek().loc;
      ++pos_;
      f = node(RawFormula::Kind::Implies, loc, f, implication());
    }
    return f;
  }

  RawFormulaPtr disjunction() {
    RawFormulaPtr f = conjunction();
    while (at(Tok::Pipe)) {
      const SourceLocation loc = peek().loc;
      ++pos_;
      f = node(RawFormula::Kind::Or, loc, f, conjunction());
    }
    return f;
  }

  RawFormulaPtr conjunction() {
    RawFormulaPtr f = unary();
    while (at(Tok::Amp)) {
      const SourceLocation loc = peek().loc;
      ++pos_;
      f = node(RawFormula::Kind::And, loc, f, unary());
    }
    return f;
  }

  RawFormulaPtr unary() {
    DepthGuard guard(*this);
    if (at(Tok::Bang)) {
      const SourceLocation loc = peek().loc;
      ++pos_;
      return node(RawFormula::Kind::Not, loc, unary());
    }
    return primary();
  }

  static bool term_continues(Tok k) {
    switch (k) {
      case Tok::Eq: case Tok::Gt: case Tok::Lt: case Tok::Ge: case Tok::Le:
      case Tok::Plus: case Tok::Minus: case Tok::Star: case Tok::Slash:
        return true;
      default:
        return false;
    }
  }

  bool tuple_ahead() const {
    return at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Comma;
  }

  RawFormulaPtr primary() {
    DepthGuard guard(*this);
    if (at(Tok::LParen) && !tuple_ahead()) {
      // Either a parenthesized formula or a term such as (x + 1) > 3.
      const std::size_t start = pos_;
      auto memo = paren_memo_.find(start);
      if (memo == paren_memo_.end()) {
        std::pair<RawFormulaPtr, std::size_t> outcome{nullptr, start};
        try {
          ++pos_;
          RawFormulaPtr inner = formula();
          expect(Tok::RParen, "closing parenthesis");
          outcome = {inner, pos_};
        } catch (const Failure&) {
        }
        memo = paren_memo_.emplace(start, outcome).first;
      }
      pos_ = start;
      if (memo->second.first && !term_continues(toks_[memo->second.second].kind)) {
        pos_ = memo->second.second;
        return memo->second.first;
      }
    }
    return atom();
  }

  RawFormulaPtr atom() {
    const SourceLocation loc = peek().loc;
    RawTermPtr lhs = term();
    auto f = std::make_shared<RawFormula>();
    f->loc = loc;
    switch (peek().kind) {
      case Tok::Eq: case Tok::Gt: case Tok::Lt: case Tok::Ge: case Tok::Le: {
        f->kind = RawFormula::Kind::Compare;
        f->name = peek().kind == Tok::Eq   ? "="
                  : peek().kind == Tok::Gt ? ">"
                  : peek().kind == Tok::Lt ? "<"
                  : peek().kind == Tok::Ge ? ">="
                                           : "<=";
        f->loc = peek().loc;
        ++pos_;
        f->a = lhs;
        f->b = term();
        return f;
      }
      default: break;
    }
    if (lhs->kind == RawTerm::Kind::Ident) {
      f->kind = RawFormula::Kind::Symbol;
      f->name = lhs->text;
      return f;
    }
    fail(peek().loc, "expected a relation (= > < >= <=) after term, found " + shown(peek()));
  }

  // Terms ------------------------------------------------------------------

  static RawTermPtr binary(char op, SourceLocation loc, RawTermPtr l, RawTermPtr r) {
    auto t = std::make_shared<RawTerm>();
    t->kind = RawTerm::Kind::Binary;
    t->op = op;
    t->loc = loc;
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    return t;
  }

  RawTermPtr term() {
    DepthGuard guard(*this);
    RawTermPtr t = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const char op = at(Tok::Plus) ? '+' : '-';
      const SourceLocation loc = peek().loc;
      ++pos_;
      t = binary(op, loc, t, product());
    }
    return t;
  }

  RawTermPtr product() {
    RawTermPtr t = factor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const char op = at(Tok::Star) ? '*' : '/';
      const SourceLocation loc = peek().loc;
      ++pos_;
      t = binary(op, loc, t, factor());
    }
    return t;
  }

  RawTermPtr factor() {
    DepthGuard guard(*this);
    auto t = std::make_shared<RawTerm>();
    t->loc = peek().loc;
    if (at(Tok::Minus)) {
      ++pos_;
      if (at(Tok::Number)) {
        t->kind = RawTerm::Kind::Number;
        t->text = "-" + peek().text;
        t->number = number_value(peek(), true);
        ++pos_;
        return t;
      }
      t->kind = RawTerm::Kind::Neg;
      t->lhs = factor();
      return t;
    }
    if (at(Tok::Number)) {
      t->kind = RawTerm::Kind::Number;
      t->text = peek().text;
      t->number = number_value(peek(), false);
      ++pos_;
      return t;
    }
    // A statement keyword here starts the next declaration.
    if (at(Tok::Ident) && !kStatementKeywords.count(peek().text)) {
      t->kind = RawTerm::Kind::Ident;
      t->text = peek().text;
      ++pos_;
      return t;
    }
    if (tuple_ahead()) {
      t->kind = RawTerm::Kind::Tuple;
      t->parts = enum_value();
      return t;
    }
    if (at(Tok::LParen)) {
      ++pos_;
      RawTermPtr inner = term();
      expect(Tok::RParen, "closing parenthesis");
      return inner;
    }
    fail(peek().loc, "expected a term, found " + shown(peek()));
  }
};

// ---------------------------------------------------------------------------
// Resolution

class Resolver {
 public:
  Resolver(const Language& lang, std::vector<Diagnostic>& diags) : lang_(lang), diags_(diags) {}

  std::optional<Formula> resolve(const RawFormula& f) {
    try {
      return formula(f);
    } catch (const Failure& failure) {
      diags_.push_back(failure.diagnostic);
      return std::nullopt;
    }
  }

 private:
  const Language& lang_;
  std::vector<Diagnostic>& diags_;

  bool is_symbol(const std::string& name) const {
    const auto* r = lang_.find_relation(name, std::nullopt);
    return r && r->kind == RelationKind::Nullary;
  }

  Formula formula(const RawFormula& f) {
    switch (f.kind) {
      case RawFormula::Kind::Symbol: return Formula::atom(symbol(f));
      case RawFormula::Kind::Compare: return Formula::atom(compare(f));
      case RawFormula::Kind::Not: return Formula::negation(formula(*f.l));
      case RawFormula::Kind::And: return Formula::conjunction(formula(*f.l), formula(*f.r));
      case RawFormula::Kind::Or: return Formula::disjunction(formula(*f.l), formula(*f.r));
      case RawFormula::Kind::Implies: return Formula::implication(formula(*f.l), formula(*f.r));
      case RawFormula::Kind::Iff: return Formula::equivalence(formula(*f.l), formula(*f.r));
    }
    fail(f.loc, "malformed formula");
  }

  Atom symbol(const RawFormula& f) {
    if (is_symbol(f.name)) return Atom::symbol(f.name);
    if (lang_.find_variable(f.name))
      fail(f.loc, "variable '" + f.name + "' is not a proposition; compare it with a value");
    fail(f.loc, "unknown proposition symbol '" + f.name + "'");
  }

  std::optional<std::size_t> infer(const RawTerm& t) const {
    switch (t.kind) {
      case RawTerm::Kind::Ident:
        if (const auto* v = lang_.find_variable(t.text)) return v->universe;
        return std::nullopt;
      case RawTerm::Kind::Binary:
        if (auto u = infer(*t.lhs)) return u;
        return infer(*t.rhs);
      case RawTerm::Kind::Neg: return infer(*t.lhs);
      default: return std::nullopt;
    }
  }

  std::optional<std::size_t> enum_holding(const EnumValue& v) const {
    for (std::size_t i = 0; i < lang_.universes.size(); ++i)
      if (lang_.universes[i].is_enumeration() && lang_.universes[i].contains(v)) return i;
    return std::nullopt;
  }

  /// Universe for a comparison of two constants.
  std::optional<std::size_t> fallback(const RawTerm& t) const {
    auto first = [&](auto pred) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < lang_.universes.size(); ++i)
        if (pred(lang_.universes[i])) return i;
      return std::nullopt;
    };
    switch (t.kind) {
      case RawTerm::Kind::Number:
      case RawTerm::Kind::Binary:
      case RawTerm::Kind::Neg:
        return first([](const Universe& u) { return u.is_real(); });
      case RawTerm::Kind::Ident:
        if (t.text == "True" || t.text == "False")
          return first([](const Universe& u) { return u.is_boolean(); });
        return enum_holding({t.text});
      case RawTerm::Kind::Tuple: return enum_holding(t.parts);
    }
    return std::nullopt;
  }

  bool known_constant(const std::string& text) const {
    return text == "True" || text == "False" || enum_holding({text}).has_value();
  }

  Term term(const RawTerm& t, std::size_t u) {
    const Universe& uni = lang_.universes[u];
    switch (t.kind) {
      case RawTerm::Kind::Ident: {
        if (const auto* v = lang_.find_variable(t.text)) {
          if (v->universe != u)
            fail(t.loc, "type mismatch: '" + t.text + "' has type " +
                            lang_.universes[v->universe].name + ", expected " + uni.name);
          return Term::variable(t.text);
        }
        if (is_symbol(t.text))
          fail(t.loc, "proposition symbol '" + t.text + "' cannot appear inside a comparison");
        Value value;
        if (uni.is_enumeration()) value = EnumValue{t.text};
        else if (uni.is_boolean() && (t.text == "True" || t.text == "False")) value = t.text == "True";
        else if (!known_constant(t.text)) fail(t.loc, "unknown identifier '" + t.text + "'");
        else fail(t.loc, "type mismatch: '" + t.text + "' is not a value of " + uni.name);
        if (!uni.contains(value)) {
          if (!known_constant(t.text)) fail(t.loc, "unknown identifier '" + t.text + "'");
          fail(t.loc, "type mismatch: '" + t.text + "' is not a value of " + uni.name);
        }
        return Term::constant(u, std::move(value));
      }
      case RawTerm::Kind::Number:
        if (!uni.is_real())
          fail(t.loc, "type mismatch: number " + t.text + " is not a value of " + uni.name);
        if (!uni.contains(t.number))
          fail(t.loc, "constant " + t.text + " lies outside " + uni.name);
        return Term::constant(u, t.number);
      case RawTerm::Kind::Tuple: {
        const EnumValue value = t.parts;
        if (!uni.is_enumeration() || !uni.contains(value))
          fail(t.loc, "type mismatch: " + to_string(Value{value}) + " is not a value of " +
                          uni.name);
        return Term::constant(u, value);
      }
      case RawTerm::Kind::Binary:
      case RawTerm::Kind::Neg: {
        const std::string fn = t.kind == RawTerm::Kind::Neg ? "neg" : std::string(1, t.op);
        if (!lang_.find_function(fn, u))
          fail(t.loc, "arithmetic '" + std::string(t.kind == RawTerm::Kind::Neg ? "-" : fn) +
                          "' is not defined on " + uni.name);
        std::vector<Term> args{term(*t.lhs, u)};
        if (t.rhs) args.push_back(term(*t.rhs, u));
        return Term::apply(fn, std::move(args));
      }
    }
    fail(t.loc, "malformed term");
  }

  Atom compare(const RawFormula& f) {
    std::optional<std::size_t> u = infer(*f.a);
    if (!u) u = infer(*f.b);
    if (!u) u = fallback(*f.a);
    if (!u) u = fallback(*f.b);
    if (!u) fail(f.a->loc, "cannot determine the type of this comparison");
    Term lhs = term(*f.a, *u);
    Term rhs = term(*f.b, *u);
    if (!lang_.find_relation(f.name, *u))
      fail(f.loc, "relation '" + f.name + "' is not defined on " + lang_.universes[*u].name);
    Atom atom = Atom::binary(f.name, *u, std::move(lhs), std::move(rhs));
    try {
      typecheck_atom(atom, lang_);
    } catch (const Error& e) {
      fail(f.loc, e.what());
    }
    return atom;
  }
};

// ---------------------------------------------------------------------------
// Declarations

class Builder {
 public:
  explicit Builder(std::vector<Diagnostic>& diags) : diags_(diags) {}

  std::optional<TheoryDocument> build(const RawDocument& raw) {
    TheoryDocument doc;
    std::vector<Universe> universes;
    std::vector<VariableDecl> variables;
    std::vector<std::string> symbols;
    const std::size_t errors_before = diags_.size();

    std::map<std::string, std::size_t> type_index;
    for (const auto& t : raw.types) {
      if (type_index.count(t.name)) {
        error(t.loc, "type '" + t.name + "' is declared twice");
        continue;
      }
      Universe u;
      u.name = t.name;
      if (t.kind == RawType::Kind::Real) u.carrier = RealInterval{t.lo, t.hi};
      else if (t.kind == RawType::Kind::Bool) u.carrier = BooleanCarrier{};
      else u.carrier = Enumeration{t.values};
      u.order = t.order;
      type_index[t.name] = universes.size();
      universes.push_back(std::move(u));
      doc.spans["type:" + t.name] = t.loc;
    }

    std::set<std::string> formula_names;
    for (const auto& s : raw.symbols) {
      if (!formula_names.insert(s.name).second) {
        error(s.loc, "'" + s.name + "' is declared twice");
        continue;
      }
      symbols.push_back(s.name);
      doc.spans["atom:" + s.name] = s.loc;
    }
    for (const auto& v : raw.vars) {
      auto it = type_index.find(v.type.name);
      if (it == type_index.end()) {
        error(v.type.loc, "unknown type '" + v.type.name + "'");
        continue;
      }
      for (const auto& n : v.names) {
        if (!formula_names.insert(n.name).second) {
          error(n.loc, "'" + n.name + "' is declared twice");
          continue;
        }
        variables.push_back({n.name, it->second});
        doc.spans["var:" + n.name] = n.loc;
      }
    }

    doc.language = make_language(std::move(universes), std::move(variables), std::move(symbols));
    for (const auto& issue : validate_language(doc.language)) {
      SourceLocation loc;
      const std::string prefix = "universe ";
      if (issue.element.rfind(prefix, 0) == 0) {
        auto span = doc.spans.find("type:" + issue.element.substr(prefix.size()));
        if (span != doc.spans.end()) loc = span->second;
      }
      error(loc, issue.element + ": " + issue.message);
    }

    std::set<std::string> construct_names;
    for (const auto& c : raw.constructs) {
      if (!construct_names.insert(c.name.name).second) {
        error(c.name.loc, "construct '" + c.name.name + "' is declared twice");
        continue;
      }
      ConstructRecord rec;
      rec.name = c.name.name;
      rec.derived_from = c.derives;
      rec.definition = c.definition.value_or("");
      for (const auto& d : c.dims) {
        const auto* v = doc.language.find_variable(d.variable.name);
        if (!v) {
          error(d.variable.loc, "unknown variable '" + d.variable.name + "' in dimension");
          continue;
        }
        rec.dimensions.push_back(
            {d.variable.name, d.source, d.shape, doc.language.universes[v->universe].name});
      }
      doc.spans["construct:" + rec.name] = c.name.loc;
      doc.constructs.push_back(std::move(rec));
    }

    Resolver resolver(doc.language, diags_);
    for (const auto& p : raw.props) {
      if (doc.index_of(p.id.name) || doc.spans.count("prop:" + p.id.name)) {
        error(p.id.loc, "proposition '" + p.id.name + "' is declared twice");
        continue;
      }
      doc.spans["prop:" + p.id.name] = p.id.loc;
      if (auto f = resolver.resolve(*p.formula)) doc.hypotheses.push_back({p.id.name, *f});
    }

    if (diags_.size() != errors_before) return std::nullopt;
    return doc;
  }

 private:
  std::vector<Diagnostic>& diags_;

  void error(SourceLocation loc, std::string message) {
    diags_.push_back({Severity::Error, std::move(message), loc});
  }
};

}  // namespace

ParseResult parse_theory(std::string_view text) {
  ParseResult result;
  std::vector<Token> tokens = detail::lex(text, result.diagnostics);
  Parser parser(std::move(tokens));
  RawDocument raw = parser.document(result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  result.document = Builder(result.diagnostics).build(raw);
  return result;
}

FormulaParse parse_formula(std::string_view text, const Language& lang) {
  FormulaParse result;
  std::vector<Token> tokens = detail::lex(text, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  Parser parser(std::move(tokens));
  RawFormulaPtr raw;
  try {
    raw = parser.lone_formula();
  } catch (const Failure& f) {
    result.diagnostics.push_back(f.diagnostic);
    return result;
  }
  result.formula = Resolver(lang, result.diagnostics).resolve(*raw);
  return result;
}

}  // namespace thy
