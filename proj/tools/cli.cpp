#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thy/clausal.hpp"
#include "thy/dsl.hpp"
#include "thy/errors.hpp"
#include "thy/graph.hpp"

namespace thy::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool no_timing = false;
  std::size_t max_clauses = 100000;
};

/// Reported to the user as-is; exits with kExitError.
struct Fatal {
  std::string message;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw Fatal{"cannot compute input digest"};
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

struct Input {
  std::string path;
  std::string bytes;
  TheoryDocument doc;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fatal{path + ": cannot open file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  Input input{path, buf.str(), {}};
  ParseResult parsed = parse_theory(input.bytes);
  if (!parsed.ok()) {
    std::string msg;
    for (const auto& d : parsed.diagnostics) msg += (msg.empty() ? "" : "\n") + path + ":" + to_string(d);
    throw Fatal{msg};
  }
  input.doc = std::move(*parsed.document);
  return input;
}

Formula query_formula(const std::string& text, const Language& lang) {
  FormulaParse q = parse_formula(text, lang);
  if (!q.formula) {
    std::string msg;
    for (const auto& d : q.diagnostics) msg += (msg.empty() ? "" : "\n") + ("query:" + to_string(d));
    throw Fatal{msg};
  }
  return *q.formula;
}

/// Declared symbols first, so `atom P, Q, R, S` fixes the node layout.
AtomTable atom_seed(const TheoryDocument& doc) {
  std::vector<Atom> atoms;
  for (const auto& s : doc.language.symbols()) atoms.push_back(Atom::symbol(s));
  return AtomTable(atoms);
}

CanonicalSet synthesize(const TheoryDocument& doc, ClosureMethod method) {
  try {
    return canonical_set(doc.theory(), atom_seed(doc), method);
  } catch (const NotImplicational& e) {
    throw Fatal{"proposition " + doc.hypotheses[e.formula_index()].id +
                " is not an implication between literals: " +
                to_string(doc.hypotheses[e.formula_index()].formula)};
  }
}

std::string hypothesis_line(const Hypothesis& h) { return h.id + ": " + to_string(h.formula); }

ordered_json hypothesis_json(const Hypothesis& h) {
  return {{"id", h.id}, {"formula", to_string(h.formula)}};
}

/// Hypothesis ids along a shortest path from u to v in the reduction.
std::vector<std::string> derivation(const CanonicalSet& cs, const TheoryDocument& doc, Edge target) {
  const ImplicationGraph& g = cs.reduction;
  std::vector<std::size_t> parent(g.node_count(), g.node_count());
  std::deque<std::size_t> queue{target.first};
  parent[target.first] = target.first;
  while (!queue.empty() && parent[target.second] == g.node_count()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < g.node_count(); ++v)
      if (g.has_edge(u, v) && parent[v] == g.node_count()) {
        parent[v] = u;
        queue.push_back(v);
      }
  }
  std::vector<std::string> ids;
  if (parent[target.second] == g.node_count()) return ids;
  for (std::size_t v = target.second; v != target.first; v = parent[v]) {
    auto it = g.origin().find({parent[v], v});
    std::string id = "(synthesized)";
    if (it != g.origin().end()) id = doc.hypotheses[it->second.front()].id;
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

void warn_self_refuting(const CanonicalSet& cs, std::ostream& err) {
  for (std::size_t v : cs.self_refuting)
    err << "warning: " << cs.closure.label(v) << " implies its own negation; entailment also derives "
        << cs.closure.label(cs.closure.negate(v)) << ", which the graph does not show\n";
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Fatal{path + ": cannot write file"};
}

std::string matrix_table(const ImplicationGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.node_count(); ++i) os << "# " << i << " " << g.label(i) << '\n';
  os << g.adjacency();
  return os.str();
}

struct Outcome {
  int code = kExitOk;
  std::string text;
  ordered_json result;
};

// Commands -------------------------------------------------------------------

Outcome cmd_check(const Input& in) {
  const TheoryDocument& d = in.doc;
  Outcome o;
  std::ostringstream os;
  os << "ok: " << d.language.universes.size() << " types, " << d.language.variables.size()
     << " variables, " << d.language.symbols().size() << " symbols, " << d.constructs.size()
     << " constructs, " << d.hypotheses.size() << " propositions\n"
     << language_summary(d.language);
  o.text = os.str();
  o.result = {{"valid", true},
              {"types", d.language.universes.size()},
              {"variables", d.language.variables.size()},
              {"symbols", d.language.symbols().size()},
              {"constructs", d.constructs.size()},
              {"propositions", d.hypotheses.size()},
              {"language", language_summary(d.language)}};
  return o;
}

Outcome cmd_entail(const Input& in, const std::string& query, const Options& opt) {
  const Formula q = query_formula(query, in.doc.language);
  SaturationOptions so;
  so.max_clauses = opt.max_clauses;
  const Entailment e = entails(in.doc.theory(), q, so);
  const SaturationResult& r = e.proof;
  Outcome o;
  o.code = e.entailed ? kExitOk : kExitNo;
  std::ostringstream os;
  os << (e.entailed ? "yes" : "no") << '\n';
  os << "clauses:\n";
  for (std::size_t i = 0; i < r.input_count; ++i)
    os << "  [" << i << "] " << to_string(r.clauses[i], r.atoms) << '\n';
  if (e.entailed) {
    os << "refutation:\n";
    for (const auto& s : r.refutation())
      os << "  [" << s.resolvent << "] " << to_string(r.clauses[s.resolvent], r.atoms) << " from ["
         << s.positive_parent << "] and [" << s.negative_parent << "] on "
         << to_string(r.atoms[s.pivot]) << '\n';
  } else {
    os << "saturated after " << r.rounds << " rounds with " << r.clauses.size()
       << " clauses and no empty clause\n";
  }
  o.text = os.str();
  o.result = {{"query", to_string(q)},
              {"entailed", e.entailed},
              {"rounds", r.rounds},
              {"clauses", r.clauses.size()},
              {"proof", to_json(r, true)}};
  return o;
}

Outcome cmd_oracle(const Input& in, const std::string& query) {
  const Formula q = query_formula(query, in.doc.language);
  const Theory t = in.doc.theory();
  const bool yes = brute_force_entails(t, q);
  Theory all = t;
  all.push_back(q);
  Outcome o;
  o.code = yes ? kExitOk : kExitNo;
  o.text = std::string(yes ? "yes" : "no") + "\n";
  o.result = {{"query", to_string(q)}, {"entailed", yes}, {"atoms", atoms_of(all).size()}};
  return o;
}

Outcome cmd_closure(const Input& in, const std::string& method, const std::string& dot, bool matrix,
                    std::ostream& out, std::ostream& err) {
  const ClosureMethod m = method == "matrix" ? ClosureMethod::MatrixPower : ClosureMethod::FloydWarshall;
  const CanonicalSet cs = synthesize(in.doc, m);
  warn_self_refuting(cs, err);
  Outcome o;
  std::ostringstream os;
  os << "closure: " << cs.closure.edge_count() << " edges (" << cs.graph.edge_count()
     << " in the theory graph)\n";
  os << "derived implications:\n";
  ordered_json derived = ordered_json::array();
  for (const Edge& e : cs.derived) {
    const std::string f = to_string(edge_formula(cs.closure, e));
    os << "  " << f << '\n';
    derived.push_back(f);
  }
  if (matrix) os << "closure matrix:\n" << matrix_table(cs.closure);
  if (!dot.empty()) write_file(dot, export_dot(cs.closure, "closure"), out);
  o.text = os.str();
  ordered_json self = ordered_json::array();
  for (std::size_t v : cs.self_refuting) self.push_back(cs.closure.label(v));
  o.result = {{"method", method},
              {"edges", cs.closure.edge_count()},
              {"graph_edges", cs.graph.edge_count()},
              {"derived", derived},
              {"self_refuting", self}};
  if (matrix) o.result["matrix"] = to_text(cs.closure.adjacency());
  return o;
}

Outcome cmd_reduce(const Input& in, const std::string& dot, std::ostream& out, std::ostream& err) {
  const TheoryDocument& d = in.doc;
  const CanonicalSet cs = synthesize(d, ClosureMethod::FloydWarshall);
  warn_self_refuting(cs, err);
  Outcome o;
  std::ostringstream os;
  os << "canonical set (" << cs.kept.size() << " of " << d.hypotheses.size() << " kept):\n";
  ordered_json kept = ordered_json::array(), removed = ordered_json::array(),
               synthesized = ordered_json::array(), canonical = ordered_json::array();
  for (std::size_t i : cs.kept) {
    os << "  " << hypothesis_line(d.hypotheses[i]) << '\n';
    kept.push_back(hypothesis_json(d.hypotheses[i]));
  }
  os << "removed:\n";
  for (const auto& r : cs.removed) {
    const Hypothesis& h = d.hypotheses[r.formula];
    ordered_json j = hypothesis_json(h);
    j["reason"] = r.reason;
    os << "  " << hypothesis_line(h) << "  [" << r.reason;
    if (r.reason == "derivable") {
      const auto& imp = cs.theory.implications[r.formula];
      const auto via = derivation(cs, d, {cs.graph.node_of(imp.antecedent), cs.graph.node_of(imp.consequent)});
      for (std::size_t k = 0; k < via.size(); ++k) os << (k ? ", " : " via ") << via[k];
      j["via"] = via;
    }
    os << "]\n";
    removed.push_back(j);
  }
  if (!cs.synthesized.empty()) {
    os << "synthesized:\n";
    for (const Edge& e : cs.synthesized) {
      const std::string f = to_string(edge_formula(cs.reduction, e));
      os << "  " << f << '\n';
      synthesized.push_back(f);
    }
  }
  for (const auto& f : cs.reduced_theory) canonical.push_back(to_string(f));
  if (!dot.empty()) write_file(dot, export_dot(cs.reduction, "reduction"), out);
  o.text = os.str();
  o.result = {{"kept", kept},
              {"removed", removed},
              {"synthesized", synthesized},
              {"canonical_set", canonical}};
  return o;
}

std::vector<std::size_t> parse_order(const std::string& spec, const TheoryDocument& d) {
  std::vector<std::size_t> order;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (auto i = d.index_of(tok)) {
      order.push_back(*i);
    } else if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      const std::size_t i = std::stoul(tok);
      if (i >= d.hypotheses.size()) throw Fatal{"--order: index " + tok + " is out of range"};
      order.push_back(i);
    } else {
      throw Fatal{"--order: unknown proposition '" + tok + "'"};
    }
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == d.hypotheses.size();
  for (std::size_t i = 0; permutation && i < sorted.size(); ++i) permutation = sorted[i] == i;
  if (!permutation) throw Fatal{"--order must list every proposition exactly once"};
  return order;
}

Outcome cmd_minimize(const Input& in, const std::string& order_spec, const Options& opt) {
  const TheoryDocument& d = in.doc;
  std::vector<std::size_t> order;
  if (!order_spec.empty()) order = parse_order(order_spec, d);
  SaturationOptions so;
  so.max_clauses = opt.max_clauses;
  const MinimalTheory m = minimal_theory(d.theory(), order, so);
  Outcome o;
  std::ostringstream os;
  os << "minimal theory (" << m.kept.size() << " of " << d.hypotheses.size() << " kept):\n";
  ordered_json kept = ordered_json::array(), removed = ordered_json::array();
  for (std::size_t i : m.kept) {
    os << "  " << hypothesis_line(d.hypotheses[i]) << '\n';
    kept.push_back(hypothesis_json(d.hypotheses[i]));
  }
  os << "removed (entailed by the rest):\n";
  for (std::size_t i : m.removed) {
    os << "  " << hypothesis_line(d.hypotheses[i]) << '\n';
    removed.push_back(hypothesis_json(d.hypotheses[i]));
  }
  o.text = os.str();
  o.result = {{"kept", kept}, {"removed", removed}};
  return o;
}

Outcome cmd_export(const Input& in, const std::string& format, const std::string& graph,
                   const std::string& path, std::ostream& out) {
  std::string text;
  if (format == "json") {
    text = to_json(in.doc).dump(2) + "\n";
  } else if (format == "kb") {
    try {
      text = export_horn_kb(in.doc.theory());
    } catch (const NotHorn& e) {
      throw Fatal{"proposition " + in.doc.hypotheses[e.formula_index()].id + " is not Horn: " + e.what()};
    }
  } else {
    const CanonicalSet cs = synthesize(in.doc, ClosureMethod::FloydWarshall);
    const ImplicationGraph& g = graph == "closure"     ? cs.closure
                                : graph == "reduction" ? cs.reduction
                                                       : cs.graph;
    text = export_dot(g, graph);
  }
  write_file(path, text, out);
  Outcome o;
  if (path != "-") o.text = "wrote " + std::to_string(text.size()) + " bytes to " + path + "\n";
  o.result = {{"format", format}, {"out", path}, {"bytes", text.size()}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theory checker: deduction and synthesis over typed propositional theories", "thy"};
  app.set_version_flag("--version", std::string(THY_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "Print a JSON run report instead of text");
  app.add_flag("--no-timing", opt.no_timing, "Omit timing from the output");
  app.add_option("--max-clauses", opt.max_clauses, "Clause cap for resolution saturation")
      ->check(CLI::PositiveNumber);

  std::string file, query, method = "fw", dot, order, format, out_path, graph = "input";
  bool matrix = false;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Theory file (.thy)")->required();
    return sub;
  };
  auto* check = with_file(app.add_subcommand("check", "Parse and validate a theory file"));
  auto* entail = with_file(app.add_subcommand("entail", "Decide T |= query by resolution"));
  entail->add_option("--query", query, "Formula in the prop grammar")->required();
  auto* oracle = with_file(app.add_subcommand("oracle", "Decide T |= query by truth table"));
  oracle->add_option("--query", query, "Formula in the prop grammar")->required();
  auto* closure = with_file(app.add_subcommand("closure", "List implications derivable by chaining"));
  closure->add_option("--method", method, "matrix or fw")->check(CLI::IsMember({"matrix", "fw"}));
  closure->add_option("--dot", dot, "Write the closure graph as DOT");
  closure->add_flag("--matrix", matrix, "Print the closure adjacency matrix");
  auto* reduce = with_file(app.add_subcommand("reduce", "Canonical (minimal generating) set"));
  reduce->add_option("--dot", dot, "Write the reduced graph as DOT");
  auto* minimize = with_file(app.add_subcommand("minimize", "Drop propositions entailed by the rest"));
  minimize->add_option("--order", order, "Removal order: ids or 0-based indices, comma separated");
  auto* exp = with_file(app.add_subcommand("export", "Export as DOT, knowledge base or JSON"));
  exp->add_option("--format", format, "dot, kb or json")
      ->required()
      ->check(CLI::IsMember({"dot", "kb", "json"}));
  exp->add_option("--out", out_path, "Output path, - for stdout")->required();
  exp->add_option("--graph", graph, "Graph for dot: input, closure or reduction")
      ->check(CLI::IsMember({"input", "closure", "reduction"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << THY_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  Input input;
  try {
    input = load(file);
    if (sub == check) outcome = cmd_check(input);
    else if (sub == entail) outcome = cmd_entail(input, query, opt);
    else if (sub == oracle) outcome = cmd_oracle(input, query);
    else if (sub == closure) outcome = cmd_closure(input, method, dot, matrix, out, err);
    else if (sub == reduce) outcome = cmd_reduce(input, dot, out, err);
    else if (sub == minimize) outcome = cmd_minimize(input, order, opt);
    else outcome = cmd_export(input, format, graph, out_path, out);
  } catch (const Fatal& f) {
    err << f.message << '\n';
    return kExitError;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << " (raise --max-clauses to continue)\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (opt.json) {
    ordered_json report;
    report["command"] = sub->get_name();
    report["tool_version"] = THY_VERSION;
    report["input_digest"] = "sha256:" + sha256_hex(input.bytes);
    report["exit_code"] = outcome.code;
    report["result"] = outcome.result;
    if (!opt.no_timing) report["timing_ms"] = ms;
    out << report.dump(2) << '\n';
  } else {
    out << outcome.text;
    if (!opt.no_timing) out << "time: " << std::fixed << std::setprecision(3) << ms << " ms\n";
  }
  return outcome.code;
}

}  // namespace thy::cli
