#include <sstream>

#include "format.hpp"
#include "thy/dsl.hpp"

namespace thy {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  return out + "\"";
}

std::string value_list(const std::vector<EnumValue>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += to_string(Value{values[i]});
  }
  return out;
}

std::string carrier_text(const Universe& u) {
  if (const auto* r = std::get_if<RealInterval>(&u.carrier))
    return "real[" + detail::format_number(r->lo) + ", " + detail::format_number(r->hi) + "]";
  if (u.is_boolean()) return "bool";
  return "{" + value_list(std::get<Enumeration>(u.carrier).values) + "}";
}

}  // namespace

std::string render_theory(const TheoryDocument& doc) {
  const Language& lang = doc.language;
  std::ostringstream os;
  os << "# theory\n";
  auto section = [&os](bool nonempty) {
    if (nonempty) os << '\n';
  };

  section(!lang.universes.empty());
  for (const auto& u : lang.universes) {
    os << "type " << u.name << " = " << carrier_text(u);
    if (!u.order.empty()) {
      os << " order { ";
      for (std::size_t i = 0; i < u.order.size(); ++i) {
        if (i) os << "; ";
        os << to_string(Value{u.order[i].greater}) << " > " << to_string(Value{u.order[i].lesser});
      }
      os << " }";
    }
    os << '\n';
  }

  const auto symbols = lang.symbols();
  section(!symbols.empty() || !lang.variables.empty());
  if (!symbols.empty()) {
    os << "atom ";
    for (std::size_t i = 0; i < symbols.size(); ++i) os << (i ? ", " : "") << symbols[i];
    os << '\n';
  }
  for (const auto& v : lang.variables) os << "var " << v.name << " : " << lang.universes[v.universe].name << '\n';

  for (const auto& c : doc.constructs) {
    os << "\nconstruct " << c.name << " {\n";
    if (!c.derived_from.empty()) {
      os << "  derives ";
      for (std::size_t i = 0; i < c.derived_from.size(); ++i)
        os << (i ? ", " : "") << quoted(c.derived_from[i]);
      os << ";\n";
    }
    if (!c.definition.empty()) os << "  def " << quoted(c.definition) << ";\n";
    for (const auto& d : c.dimensions)
      os << "  dim " << d.variable << " from "
         << (d.source == DerivationSource::Data ? "data" : "abductive") << " shape "
         << (d.shape == VariableShape::Scalar ? "scalar" : "collection") << ";\n";
    os << "}\n";
  }

  section(!doc.hypotheses.empty());
  for (const auto& h : doc.hypotheses) os << "prop " << h.id << ": " << to_string(h.formula) << '\n';
  return os.str();
}

std::string language_summary(const Language& lang) {
  std::ostringstream os;
  const std::size_t n = lang.universes.size();
  auto per_universe = [&](auto&& body) {
    os << '(';
    for (std::size_t u = 0; u < n; ++u) {
      if (u) os << ", ";
      os << '{';
      body(u);
      os << '}';
    }
    os << ")\n";
  };

  os << "U = (";
  for (std::size_t u = 0; u < n; ++u) {
    const Universe& uni = lang.universes[u];
    if (u) os << ", ";
    os << uni.name << " = ";
    if (const auto* r = std::get_if<RealInterval>(&uni.carrier))
      os << '[' << detail::format_number(r->lo) << ", " << detail::format_number(r->hi) << ']';
    else if (uni.is_boolean())
      os << "{True, False}";
    else
      os << '{' << value_list(std::get<Enumeration>(uni.carrier).values) << '}';
  }
  os << ")\n";

  auto list = [&os](const std::vector<std::string>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << items[i];
  };
  os << "V = ";
  per_universe([&](std::size_t u) {
    std::vector<std::string> names;
    for (const auto& v : lang.variables)
      if (v.universe == u) names.push_back(v.name);
    list(names);
  });
  os << "F = ";
  per_universe([&](std::size_t u) {
    std::vector<std::string> names;
    for (const auto& f : lang.functions)
      if (f.universe == u) names.push_back(f.name);
    list(names);
  });
  os << "R = ";
  per_universe([&](std::size_t u) {
    std::vector<std::string> names;
    for (const auto& r : lang.relations)
      if (r.universe == u) names.push_back(r.name);
    list(names);
  });
  const auto symbols = lang.symbols();
  if (!symbols.empty()) {
    os << "P = {";
    list(symbols);
    os << "}\n";
  }
  return os.str();
}

}  // namespace thy
