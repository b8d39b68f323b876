#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../tools/cli.hpp"
#include "support/dot_check.hpp"
#include "support/fixtures.hpp"

using namespace thy;
using namespace thy::testing;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun thy_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, std::string_view needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, Check) {
  const CliRun r = thy_run({"--no-timing", "check", data_path("casestudy.thy")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "ok: 3 types, 5 variables, 0 symbols, 3 constructs, 4 propositions"));
  EXPECT_TRUE(contains(r.out, "V = ({OS}, {RD, SI, CM}, {CL})"));
  EXPECT_FALSE(contains(r.out, "time:"));
  EXPECT_EQ(thy_run({"--no-timing", "check", data_path("empty.thy")}).code, cli::kExitOk);
}

TEST(Cli, TimingLineByDefault) {
  const CliRun r = thy_run({"check", data_path("pqrs.thy")});
  EXPECT_TRUE(contains(r.out, "time: "));
}

TEST(Cli, EntailAndOracle) {
  const std::string file = data_path("casestudy.thy");
  const CliRun yes = thy_run({"--no-timing", "entail", file, "--query", "OS > 5 -> !(RD = True)"});
  EXPECT_EQ(yes.code, cli::kExitOk) << yes.err;
  EXPECT_EQ(yes.out.substr(0, 4), "yes\n");
  EXPECT_TRUE(contains(yes.out, "refutation:"));
  const CliRun no = thy_run({"--no-timing", "entail", file, "--query", "RD = True"});
  EXPECT_EQ(no.code, cli::kExitNo);
  const CliRun oracle_yes = thy_run({"--no-timing", "oracle", file, "--query", "OS > 5 -> !(RD = True)"});
  EXPECT_EQ(oracle_yes.code, cli::kExitOk);
  const CliRun oracle_no = thy_run({"--no-timing", "oracle", file, "--query", "RD = True"});
  EXPECT_EQ(oracle_no.code, cli::kExitNo);
  const CliRun bad = thy_run({"--no-timing", "entail", file, "--query", "OS > True"});
  EXPECT_EQ(bad.code, cli::kExitError);
  EXPECT_TRUE(contains(bad.err, "query:1:"));
}

TEST(Cli, ClosureAndReduce) {
  const std::string file = data_path("casestudy.thy");
  const CliRun closure = thy_run({"--no-timing", "closure", file});
  EXPECT_EQ(closure.code, cli::kExitOk) << closure.err;
  EXPECT_TRUE(contains(closure.out, "closure: 10 edges (8 in the theory graph)"));
  EXPECT_TRUE(contains(closure.out, "OS > 5 -> !(RD = True)"));
  const CliRun matrix = thy_run({"--no-timing", "closure", file, "--method", "matrix"});
  EXPECT_EQ(matrix.out, closure.out);

  const CliRun reduce = thy_run({"--no-timing", "reduce", file});
  EXPECT_EQ(reduce.code, cli::kExitOk);
  EXPECT_TRUE(contains(reduce.out, "canonical set (3 of 4 kept)"));
  EXPECT_TRUE(contains(reduce.out, "P10: OS > 5 -> !(SI = True)  [derivable via P1, P2]"));

  const CliRun cyclic = thy_run({"--no-timing", "reduce", data_path("cyclic.thy")});
  EXPECT_EQ(cyclic.code, cli::kExitOk);
  EXPECT_TRUE(contains(cyclic.out, "C3: Q -> R  [derivable"));
}

TEST(Cli, ReduceRejectsNonImplications) {
  const CliRun r = thy_run({"--no-timing", "reduce", data_path("horn.thy")});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_TRUE(contains(r.err, "K1"));
}

TEST(Cli, Minimize) {
  const std::string file = data_path("casestudy.thy");
  const CliRun r = thy_run({"--no-timing", "minimize", file, "--order", "P10,P1,P2,P6"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "removed (entailed by the rest):\n  P10:"));
  const CliRun bad = thy_run({"--no-timing", "minimize", file, "--order", "P1,P1"});
  EXPECT_EQ(bad.code, cli::kExitError);
}

TEST(Cli, Export) {
  const CliRun kb = thy_run({"--no-timing", "export", data_path("horn.thy"), "--format", "kb", "--out", "-"});
  EXPECT_EQ(kb.code, cli::kExitOk);
  EXPECT_EQ(kb.out, "q :- p1, p2.\np1.\np2.\n");

  const CliRun not_horn =
      thy_run({"--no-timing", "export", data_path("casestudy.thy"), "--format", "kb", "--out", "-"});
  EXPECT_EQ(not_horn.code, cli::kExitError);
  EXPECT_TRUE(contains(not_horn.err, "P2"));

  const CliRun dot = thy_run({"--no-timing", "export", data_path("pqrs.thy"), "--format", "dot", "--graph",
                           "reduction", "--out", "-"});
  const DotSummary s = check_dot(dot.out);
  ASSERT_TRUE(s.valid) << s.error;
  EXPECT_EQ(s.edges, 6u);

  const auto path = std::filesystem::temp_directory_path() / "thy_cli_export.json";
  const CliRun json = thy_run({"--no-timing", "export", data_path("casestudy.thy"), "--format", "json", "--out",
                            path.string()});
  EXPECT_EQ(json.code, cli::kExitOk);
  EXPECT_TRUE(contains(json.out, "wrote "));
  std::ifstream in(path);
  const auto parsed = nlohmann::json::parse(in);
  EXPECT_EQ(parsed["hypotheses"].size(), 4u);
  std::filesystem::remove(path);
}

TEST(Cli, JsonReport) {
  const CliRun r = thy_run({"--json", "entail", data_path("casestudy.thy"), "--query", "RD = True"});
  EXPECT_EQ(r.code, cli::kExitNo);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["command"], "entail");
  EXPECT_TRUE(j["tool_version"].is_string());
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 7u + 64u);
  EXPECT_EQ(j["exit_code"], 1);
  EXPECT_FALSE(j["result"]["entailed"].get<bool>());
  EXPECT_TRUE(j.contains("timing_ms"));
  const CliRun quiet = thy_run({"--json", "--no-timing", "check", data_path("empty.thy")});
  EXPECT_FALSE(nlohmann::json::parse(quiet.out).contains("timing_ms"));
  // sha256 of the empty string.
  EXPECT_EQ(nlohmann::json::parse(quiet.out)["input_digest"],
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Cli, Deterministic) {
  for (const char* cmd : {"check", "closure", "reduce", "minimize"}) {
    const CliRun a = thy_run({"--no-timing", "--json", cmd, data_path("casestudy.thy")});
    const CliRun b = thy_run({"--no-timing", "--json", cmd, data_path("casestudy.thy")});
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_EQ(a.code, cli::kExitOk) << cmd << a.err;
  }
}

TEST(Cli, Errors) {
  EXPECT_EQ(thy_run({"check", "/nonexistent/file.thy"}).code, cli::kExitError);
  EXPECT_EQ(thy_run({}).code, cli::kExitError);
  EXPECT_EQ(thy_run({"frobnicate"}).code, cli::kExitError);
  EXPECT_EQ(thy_run({"closure", data_path("casestudy.thy"), "--method", "nope"}).code, cli::kExitError);

  const auto path = std::filesystem::temp_directory_path() / "thy_cli_broken.thy";
  {
    std::ofstream f(path);
    f << "atom P\nprop A: P -> & P\n";
  }
  const CliRun r = thy_run({"check", path.string()});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_TRUE(contains(r.err, path.string() + ":2:"));
  std::filesystem::remove(path);
}
