#pragma once

// Theory files: parsing with located diagnostics, canonical rendering, and
// the DOT, knowledge-base and JSON exports.
//
//   # comment
//   type U1 = real[0, 10]
//   type U3 = {(Daily, High), (Eventual, Low)} order { (Daily, High) > (Eventual, Low); }
//   atom P, Q
//   var OS : U1
//   construct Team { derives "a", "b"; def "text"; dim OS from data shape scalar; }
//   prop P1: OS > 5 -> CL > (Eventual, Low)

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thy/graph.hpp"
#include "thy/model.hpp"

namespace thy {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
  bool operator==(const SourceLocation&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceLocation location;
};

/// "line:column: error: message"
std::string to_string(const Diagnostic& d);

struct Hypothesis {
  std::string id;
  Formula formula;
  bool operator==(const Hypothesis&) const = default;
};

struct TheoryDocument {
  Language language;
  std::vector<ConstructRecord> constructs;
  std::vector<Hypothesis> hypotheses;
  /// Declaration sites keyed by name (types, variables, symbols, constructs
  /// and hypothesis ids). Not part of equality.
  std::map<std::string, SourceLocation> spans;

  Theory theory() const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Structural equality; spans are ignored.
  bool operator==(const TheoryDocument& other) const;
};

struct ParseResult {
  std::optional<TheoryDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

/// Never throws on malformed input: every problem becomes a Diagnostic.
ParseResult parse_theory(std::string_view text);

struct FormulaParse {
  std::optional<Formula> formula;
  std::vector<Diagnostic> diagnostics;
};

/// A single formula in the `prop` grammar, resolved against `lang`.
FormulaParse parse_formula(std::string_view text, const Language& lang);

std::string render_theory(const TheoryDocument& doc);

/// U, V, F and R of the language, one line each.
std::string language_summary(const Language& lang);

nlohmann::ordered_json to_json(const TheoryDocument& doc);

/// Node identifiers are mangled literal labels, `not_` prefixed for negative
/// literals; the readable label goes in the `label` attribute.
std::string export_dot(const ImplicationGraph& g, std::string_view name = "theory");

/// Lowercase, runs of other characters become one `_`, leading and trailing
/// `_` trimmed, `a` prefixed when empty or starting with a digit.
std::string mangle_atom(std::string_view text);

/// `q :- p1, p2.` per rule and `q.` per fact. Throws NotHorn.
std::string export_horn_kb(std::span<const Formula> theory);

}  // namespace thy
