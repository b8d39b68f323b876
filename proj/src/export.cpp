#include <cctype>
#include <set>
#include <sstream>

#include "format.hpp"
#include "thy/dsl.hpp"
#include "thy/errors.hpp"

namespace thy {

std::string mangle_atom(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(0, "a");
  return out;
}

namespace {

/// Mangled names made unique by `_2`, `_3`, ... in input order.
std::vector<std::string> unique_names(const std::vector<Atom>& atoms) {
  std::set<std::string> taken;
  std::vector<std::string> out;
  for (const auto& a : atoms) {
    const std::string base = mangle_atom(to_string(a));
    std::string name = base;
    for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    out.push_back(name);
  }
  return out;
}

std::string dot_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const ImplicationGraph& g, std::string_view name) {
  const auto names = unique_names(g.atoms().atoms());
  auto id = [&](std::size_t node) {
    const SignedAtom lit = g.literal_of(node);
    return dot_string((lit.positive() ? "" : "not_") + names[lit.atom()]);
  };
  std::ostringstream os;
  os << "digraph " << dot_string(std::string(name)) << " {\n";
  for (std::size_t v = 0; v < g.node_count(); ++v)
    os << "  " << id(v) << " [label=" << dot_string(g.label(v)) << "];\n";
  for (const auto& [u, v] : g.edges()) os << "  " << id(u) << " -> " << id(v) << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_horn_kb(std::span<const Formula> theory) {
  const ClausalTheory ct = to_clausal(theory);
  const auto names = unique_names(ct.atoms.atoms());
  std::ostringstream os;
  for (std::size_t i = 0; i < ct.clauses.size(); ++i) {
    const Clause& c = ct.clauses[i];
    if (c.is_tautology()) continue;
    const HornKind kind = classify(c);
    if (kind == HornKind::Goal || kind == HornKind::NonHorn)
      throw NotHorn(ct.clause_origin[i],
                    "formula " + std::to_string(ct.clause_origin[i] + 1) + " yields clause " +
                        to_string(c, ct.atoms) + " with " + std::to_string(c.positive_count()) +
                        " positive literals, which has no 'q :- body.' form");
    std::vector<std::string> body;
    std::string head;
    for (SignedAtom lit : c.literals()) {
      if (lit.positive()) head = names[lit.atom()];
      else body.push_back(names[lit.atom()]);
    }
    os << head;
    for (std::size_t k = 0; k < body.size(); ++k) os << (k ? ", " : " :- ") << body[k];
    os << ".\n";
  }
  return os.str();
}

nlohmann::ordered_json to_json(const TheoryDocument& doc) {
  using nlohmann::ordered_json;
  const Language& lang = doc.language;
  ordered_json universes = ordered_json::array();
  for (const auto& u : lang.universes) {
    ordered_json j;
    j["name"] = u.name;
    if (const auto* r = std::get_if<RealInterval>(&u.carrier)) {
      j["kind"] = "real";
      j["lo"] = r->lo;
      j["hi"] = r->hi;
    } else if (u.is_boolean()) {
      j["kind"] = "bool";
    } else {
      j["kind"] = "enumeration";
      ordered_json values = ordered_json::array();
      for (const auto& v : std::get<Enumeration>(u.carrier).values) values.push_back(to_string(Value{v}));
      j["values"] = values;
      ordered_json order = ordered_json::array();
      for (const auto& p : u.order)
        order.push_back(ordered_json::array({to_string(Value{p.greater}), to_string(Value{p.lesser})}));
      j["order"] = order;
    }
    universes.push_back(j);
  }
  ordered_json variables = ordered_json::array();
  for (const auto& v : lang.variables)
    variables.push_back({{"name", v.name}, {"type", lang.universes[v.universe].name}});

  ordered_json constructs = ordered_json::array();
  for (const auto& c : doc.constructs) {
    ordered_json dims = ordered_json::array();
    for (const auto& d : c.dimensions)
      dims.push_back({{"variable", d.variable},
                      {"source", d.source == DerivationSource::Data ? "data" : "abductive"},
                      {"shape", d.shape == VariableShape::Scalar ? "scalar" : "collection"},
                      {"type", d.universe}});
    constructs.push_back({{"name", c.name},
                          {"derives", c.derived_from},
                          {"definition", c.definition},
                          {"multidimensional", c.multidimensional()},
                          {"dimensions", dims}});
  }

  ordered_json hypotheses = ordered_json::array();
  for (const auto& h : doc.hypotheses)
    hypotheses.push_back({{"id", h.id}, {"formula", to_string(h.formula)}});

  ordered_json out;
  out["language"] = {{"universes", universes}, {"variables", variables}, {"symbols", lang.symbols()}};
  out["constructs"] = constructs;
  out["hypotheses"] = hypotheses;
  return out;
}

}  // namespace thy
