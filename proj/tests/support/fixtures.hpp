#pragma once

// Shared fixtures: the case-study language and theory built by hand, and
// loaders for the .thy files under tests/data.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "thy/dsl.hpp"
#include "thy/model.hpp"

namespace thy::testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(THY_TEST_DATA) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_path(const std::string& name) { return std::string(THY_TEST_DATA) + "/" + name; }

inline TheoryDocument load_document(const std::string& name) {
  ParseResult r = parse_theory(read_data(name));
  if (!r.ok()) {
    std::string msg = name + " does not parse:";
    for (const auto& d : r.diagnostics) msg += "\n" + to_string(d);
    throw std::runtime_error(msg);
  }
  return *r.document;
}

/// U1 = [0, 10], U2 = booleans, U3 = collaboration values; OS, RD, SI, CM, CL.
inline Language case_study_language() {
  using V = EnumValue;
  Universe u1{"U1", RealInterval{0, 10}, {}};
  Universe u2{"U2", BooleanCarrier{}, {}};
  Universe u3{"U3",
              Enumeration{{V{"Daily", "High"}, V{"Eventual", "Low"}, V{"Daily", "Low"}, V{"Eventual", "High"}}},
              {{V{"Daily", "High"}, V{"Daily", "Low"}},
               {V{"Daily", "High"}, V{"Eventual", "High"}},
               {V{"Daily", "Low"}, V{"Eventual", "Low"}},
               {V{"Eventual", "High"}, V{"Eventual", "Low"}},
               {V{"Daily", "High"}, V{"Eventual", "Low"}}}};
  return make_language({u1, u2, u3}, {{"OS", 0}, {"RD", 1}, {"SI", 1}, {"CM", 1}, {"CL", 2}});
}

struct CaseStudy {
  Atom os, cl, si, rd;
  Formula phi1, phi2, phi3, phi4, phi5;
  Theory theory() const { return {phi1, phi2, phi3, phi4}; }
};

inline CaseStudy case_study() {
  const Atom os = Atom::binary(">", 0, Term::variable("OS"), Term::constant(0, 5.0));
  const Atom cl = Atom::binary(">", 2, Term::variable("CL"), Term::constant(2, EnumValue{"Eventual", "Low"}));
  const Atom si = Atom::binary("=", 1, Term::variable("SI"), Term::constant(1, true));
  const Atom rd = Atom::binary("=", 1, Term::variable("RD"), Term::constant(1, true));
  auto a = [](const Atom& x) { return Formula::atom(x); };
  auto n = [&](const Atom& x) { return Formula::negation(a(x)); };
  return CaseStudy{os,
                   cl,
                   si,
                   rd,
                   Formula::implication(a(os), a(cl)),
                   Formula::implication(a(cl), n(si)),
                   Formula::implication(a(rd), n(cl)),
                   Formula::implication(a(os), n(si)),
                   Formula::implication(a(os), n(rd))};
}

}  // namespace thy::testing
