#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "msym_cli/run.hpp"
#include "support.hpp"

using namespace msym;
using msym::cli::Command;
using msym::cli::Format;
using msym::cli::RunConfig;
using msym::test::data_path;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(RunConfig c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(Command cmd, const std::string& graph, Format f = Format::Json) {
  RunConfig c;
  c.command = cmd;
  c.graph_path = data_path(graph);
  c.format = f;
  return c;
}

int argv_run(std::vector<std::string> args) {
  args.insert(args.begin(), "msym");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data());
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  return code;
}

}  // namespace

TEST(Cli, AnalyzeFigure1) {
  const auto r = run_cli(config(Command::Analyze, "figure1.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 5);
  EXPECT_EQ(j["uniform"], false);
  EXPECT_EQ(j["permissible_pairs"]["count"], 14);
  EXPECT_EQ(j["automorphisms"], 240);
  const auto t = run_cli(config(Command::Analyze, "figure1.json", Format::Text));
  EXPECT_NE(t.out.find("uniform: no"), std::string::npos);
}

TEST(Cli, PresentVariants) {
  for (const char* which : {"q", "qprime", "lift"}) {
    auto c = config(Command::Present, "two_arc.txt");
    c.which = which;
    const auto r = run_cli(c);
    ASSERT_EQ(r.code, 0) << which << r.err;
    EXPECT_EQ(presentation_to_json(*presentation_from_json(r.out)) + "\n", r.out) << which;
  }
  auto bad = config(Command::Present, "two_arc.txt");
  bad.which = "nope";
  EXPECT_EQ(run_cli(bad).code, 1);
}

TEST(Cli, VerifyExitCodes) {
  const auto r = run_cli(config(Command::Verify, "single_edge.txt"));
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 8u);

  // Starved budgets leave obligations undecided: exit 2, never 0.
  auto c = config(Command::Verify, "triangle2.txt");
  c.depth = 0;
  c.nodes = 1;
  const auto starved = run_cli(c);
  EXPECT_EQ(starved.code, 2) << starved.err;
}

TEST(Cli, VerifyExplain) {
  auto c = config(Command::Verify, "loop.txt", Format::Text);
  c.explain = "vertex_magic/1";
  const auto r = run_cli(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("vertex_magic/1"), std::string::npos);
  c.explain = "vertex_magic/999";
  EXPECT_EQ(run_cli(c).code, 1);
}

TEST(Cli, Characters) {
  auto r = run_cli(config(Command::Characters, "figure1.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["automorphisms"], 240);
  EXPECT_EQ(j["qprime"]["characters"], 240);
  EXPECT_EQ(j["qprime"]["automorphism_comparison"]["bijective"], true);
  EXPECT_EQ(j["q"]["faithfulness"]["faithful"], false);

  // Coupled labels: fewer characters than automorphisms, reported as exit 1.
  r = run_cli(config(Command::Characters, "two_arc.txt"));
  EXPECT_EQ(r.code, 1);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["qprime"]["characters"], 4);
  EXPECT_EQ(j["automorphisms"], 8);
}

TEST(Cli, Witness) {
  auto c = config(Command::Witness, "k4_doubled.txt");
  const auto r = run_cli(c);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["relations"]["pass"], true);
  EXPECT_LE(j["edge_matrix"]["biunitary_deviation"].get<double>(), 1e-10);
  EXPECT_GE(j["edge_matrix"]["magic_deviation"].get<double>(), 0.05);
  EXPECT_NEAR(j["pq_idempotency_deviation"].get<double>(), std::sqrt(2.0) / 4, 1e-12);
  EXPECT_EQ(j["non_bichon"], true);

  const auto unsupported = run_cli(config(Command::Witness, "two_arc.txt"));
  EXPECT_EQ(unsupported.code, 1);
  EXPECT_NE(unsupported.err.find("UnsupportedUnderlyingGraph"), std::string::npos);
}

TEST(Cli, Validation) {
  auto c = config(Command::Analyze, "loop.txt");
  c.nodes = 0;
  EXPECT_THROW(cli::validate(c), Error);
  EXPECT_EQ(run_cli(c).code, 1);
  c = config(Command::Analyze, "loop.txt");
  c.tolerance = 0;
  EXPECT_THROW(cli::validate(c), Error);
  c.tolerance = -1;
  EXPECT_THROW(cli::validate(c), Error);
  c = config(Command::Analyze, "loop.txt");
  c.depth = -1;
  EXPECT_THROW(cli::validate(c), Error);
  c = config(Command::Analyze, "loop.txt");
  c.workers = 0;
  EXPECT_THROW(cli::validate(c), Error);
  EXPECT_NO_THROW(cli::validate(config(Command::Analyze, "loop.txt")));
  const auto missing = run_cli(config(Command::Analyze, "no_such_graph.txt"));
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("ParseError"), std::string::npos);
}

TEST(Cli, VerifyOptionsCapTheProver) {
  RunConfig c;
  c.nodes = 123;
  c.depth = 2;
  c.workers = 3;
  auto o = cli::verify_options(c);
  EXPECT_EQ(o.prover.node_budget, 123u);
  EXPECT_EQ(o.prover.max_insertions, 2);
  EXPECT_EQ(o.workers, 3u);
  EXPECT_EQ(o.characters.node_budget, 123u);
  c.nodes = 10'000'000;
  o = cli::verify_options(c);
  EXPECT_LT(o.prover.node_budget, c.nodes);
  EXPECT_EQ(o.characters.node_budget, c.nodes);
}

TEST(Cli, MainEntry) {
  const auto loop = data_path("loop.txt");
  EXPECT_EQ(argv_run({"--help"}), 0);
  EXPECT_EQ(argv_run({"--graph", loop, "analyze"}), 0);
  EXPECT_EQ(argv_run({"--graph", loop, "--format", "json", "verify"}), 0);
  EXPECT_EQ(argv_run({"analyze"}), 1);                               // no --graph
  EXPECT_EQ(argv_run({"--graph", loop}), 1);                         // no subcommand
  EXPECT_EQ(argv_run({"--graph", loop, "--format", "xml", "analyze"}), 1);
  EXPECT_EQ(argv_run({"--graph", loop, "present", "--which", "r"}), 1);
  EXPECT_EQ(argv_run({"--graph", loop, "--nodes", "0", "analyze"}), 1);
}
