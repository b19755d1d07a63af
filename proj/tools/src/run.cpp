#include "msym_cli/run.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "msym/characters.hpp"
#include "msym/matmodel.hpp"
#include "msym/multigraph.hpp"
#include "msym/presentation.hpp"
#include "msym/verify.hpp"

namespace msym::cli {

using ojson = nlohmann::ordered_json;

namespace {
constexpr std::uint64_t kProverNodeCap = 50'000;
}  // namespace

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.prover.max_insertions = c.depth;
  o.prover.node_budget = std::min(c.nodes, kProverNodeCap);
  o.workers = c.workers;
  o.include_label_independence = c.include_label_independence;
  o.tolerance = c.tolerance;
  o.characters.node_budget = c.nodes;
  o.characters.workers = c.workers;
  return o;
}

namespace {

std::string pair_name(const Multigraph& g, const IndexPair& p) {
  return g.vertex_name(p.vertex) + "," + std::to_string(p.label);
}

int analyze(const RunConfig& c, const Multigraph& g, std::ostream& out) {
  const auto perm = permissible_pairs(g);
  const auto aut = automorphisms(g, {c.nodes, c.workers});
  ojson j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["N"] = g.max_multiplicity();
  j["uniform"] = is_uniform(g);
  ojson pairs = ojson::array();
  for (const auto& p : perm) pairs.push_back(pair_name(g, p));
  j["permissible_pairs"] = {{"count", perm.size()}, {"pairs", std::move(pairs)}};
  j["automorphisms"] = aut.size();
  if (c.format == Format::Json) {
    out << j.dump(2) << "\n";
  } else {
    out << "vertices: " << g.vertex_count() << "\nedges: " << g.edge_count() << "\nN: " << g.max_multiplicity()
        << "\nuniform: " << (is_uniform(g) ? "yes" : "no") << "\npermissible pairs (" << perm.size() << "):";
    for (const auto& p : perm) out << " (" << pair_name(g, p) << ")";
    out << "\nautomorphisms: " << aut.size() << "\n";
  }
  return 0;
}

int present(const RunConfig& c, const Multigraph& g, std::ostream& out) {
  PresentationPtr p;
  if (c.which == "q") {
    p = build_presentation(g, c.include_label_independence);
  } else if (c.which == "qprime") {
    p = permissible_subpresentation(*build_presentation(g, c.include_label_independence), g).presentation;
  } else if (c.which == "lift") {
    p = banica_lift(g);
  } else {
    throw Error(ErrorKind::InvalidArgument, "--which must be q, qprime or lift");
  }
  out << (c.format == Format::Text ? presentation_to_text(*p) : presentation_to_json(*p) + "\n");
  return 0;
}

int verify(const RunConfig& c, const Multigraph& g, std::ostream& out, std::ostream& err) {
  const auto reports = verify_all(g, verify_options(c));
  if (c.explain) {
    auto text = explain(reports, *c.explain);
    if (!text) {
      err << "no obligation with id '" << *c.explain << "'\n";
      return 1;
    }
    out << *text;
  } else {
    out << (c.format == Format::Json ? reports_to_json(reports) + "\n" : reports_to_text(reports));
  }
  bool failed = false, undecided = false;
  for (const auto& r : reports)
    for (const auto& o : r.obligations) {
      if (o.status == ObligationStatus::Undecided) undecided = true;
      if (o.status == ObligationStatus::Proved && !replay_obligation(o, r)) {
        err << "trace of " << o.id << " does not replay\n";
        failed = true;
      }
    }
  return failed ? 1 : undecided ? 2 : 0;
}

ojson character_section(const Presentation& p, const Multigraph& g, const std::vector<Character>& chars,
                        const std::vector<MultigraphAutomorphism>& aut, bool list) {
  const auto& a = *p.alphabet();
  const auto f = faithfulness_report(p, g, chars);
  const auto cmp = compare_with_automorphisms(p, g, chars, aut);
  ojson j;
  j["index_pairs"] = a.index_count();
  j["characters"] = chars.size();
  ojson kernel = ojson::array();
  for (auto [x, y] : f.kernel_pairs) kernel.push_back({cycle_notation(chars[x], a), cycle_notation(chars[y], a)});
  j["faithfulness"] = {{"distinct_actions", f.distinct_actions},
                       {"kernel_pairs", f.kernel_pair_count},
                       {"faithful", f.faithful()},
                       {"examples", std::move(kernel)}};
  j["automorphism_comparison"] = {{"characters", cmp.character_count},
                                  {"automorphisms", cmp.automorphism_count},
                                  {"bijective", cmp.bijective},
                                  {"unmatched_characters", cmp.unmatched_characters.size()},
                                  {"unmatched_automorphisms", cmp.unmatched_automorphisms.size()}};
  if (list) {
    ojson all = ojson::array();
    for (const auto& ch : chars) all.push_back(cycle_notation(ch, a));
    j["list"] = std::move(all);
  }
  return j;
}

int characters(const RunConfig& c, const Multigraph& g, std::ostream& out) {
  const auto q = build_presentation(g, c.include_label_independence);
  const auto qp = permissible_subpresentation(*q, g).presentation;
  CharacterOptions opt;
  opt.node_budget = c.nodes;
  opt.workers = c.workers;
  const auto aut = automorphisms(g, {c.nodes, c.workers});
  const auto qc = enumerate_characters(*q, opt);
  const auto pc = enumerate_characters(*qp, opt);
  ojson j;
  j["automorphisms"] = aut.size();
  j["q"] = character_section(*q, g, qc, aut, c.list);
  j["qprime"] = character_section(*qp, g, pc, aut, c.list);
  j["note"] = "classical shadow only: characters are the one-dimensional representations";
  const bool ok = j["qprime"]["automorphism_comparison"]["bijective"].get<bool>() &&
                  j["qprime"]["faithfulness"]["faithful"].get<bool>();
  if (c.format == Format::Json) {
    out << j.dump(2) << "\n";
  } else {
    out << "automorphisms: " << aut.size() << "\n";
    for (const char* key : {"q", "qprime"}) {
      const auto& s = j[key];
      out << key << ": " << s["characters"].get<std::size_t>() << " characters on "
          << s["index_pairs"].get<std::size_t>() << " index pairs; " << s["faithfulness"]["distinct_actions"]
          << " distinct actions, " << s["faithfulness"]["kernel_pairs"] << " kernel pairs; bijective with Aut: "
          << (s["automorphism_comparison"]["bijective"].get<bool>() ? "yes" : "no") << "\n";
      if (s.contains("list"))
        for (const auto& x : s["list"]) out << "  " << x.get<std::string>() << "\n";
    }
  }
  return ok ? 0 : 1;
}

int witness(const RunConfig& c, const Multigraph& g, std::ostream& out) {
  const auto model = pauli_witness(g, c.theta);
  const auto q = build_presentation(g, c.include_label_independence);
  const auto rel = check_relations(model, *q, c.tolerance);
  const auto dev = evaluate_edge_matrix(model, edge_matrix(*q, g), g);
  const auto blocks = pauli_blocks(c.theta);
  const Matrix pq = blocks[0] * blocks[10];
  const double entry = norm(pq * pq - pq);
  const bool ok = rel.pass && dev.biunitary <= c.tolerance;
  ojson j;
  j["theta"] = c.theta;
  j["dimension"] = model.dimension;
  j["relations"] = {{"pass", rel.pass}, {"tolerance", rel.tolerance}, {"deviation", rel.deviation}};
  j["edge_matrix"] = {{"biunitary_deviation", dev.biunitary},
                      {"magic_deviation", dev.magic},
                      {"worst_magic", dev.worst_magic}};
  j["pq_idempotency_deviation"] = entry;
  j["non_bichon"] = ok && dev.magic > c.tolerance;
  if (c.format == Format::Json) {
    out << j.dump(2) << "\n";
  } else {
    out << "theta: " << c.theta << "\nrelations at " << c.tolerance << ": " << (rel.pass ? "pass" : "FAIL") << "\n";
    for (const auto& [cls, v] : rel.deviation) out << "  " << cls << ": " << v << "\n";
    out << "edge matrix biunitary deviation: " << dev.biunitary << "\nedge matrix magic deviation: " << dev.magic
        << " (" << dev.worst_magic << ")\n||(pq)^2 - pq||: " << entry << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.depth < 0) throw Error(ErrorKind::InvalidArgument, "--depth must be non-negative");
  if (c.nodes == 0) throw Error(ErrorKind::InvalidArgument, "--nodes must be positive");
  if (!(c.tolerance > 0 && c.tolerance < 1)) throw Error(ErrorKind::InvalidArgument, "--tol must lie in (0, 1)");
  if (c.workers == 0) throw Error(ErrorKind::InvalidArgument, "--workers must be positive");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    const auto g = load_graph(c.graph_path);
    switch (c.command) {
      case Command::Analyze: return analyze(c, g, out);
      case Command::Present: return present(c, g, out);
      case Command::Verify: return verify(c, g, out, err);
      case Command::Characters: return characters(c, g, out);
      case Command::Witness: return witness(c, g, out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  }
  return 1;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"msym: quantum symmetries of multigraphs"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format;
  bool no_rv = false;
  app.add_option("--graph", c.graph_path, "graph file (text edge list or JSON)")->required();
  app.add_option("--depth", c.depth, "maximum insertions per proof")->capture_default_str();
  app.add_option("--nodes", c.nodes, "search node budget")->capture_default_str();
  app.add_option("--tol", c.tolerance, "numeric tolerance")->capture_default_str();
  app.add_flag("--no-rv", no_rv, "omit the label-independence relations");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", c.workers, "worker threads")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "N, uniformity, permissible pairs, automorphism count");
  auto* present = app.add_subcommand("present", "presentation of Q, Q' or the Banica lift");
  present->add_option("--which", c.which, "q, qprime or lift")
      ->check(CLI::IsMember({"q", "qprime", "lift"}))
      ->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run every verification suite");
  verify->add_option("--explain", c.explain, "print the full trace of one obligation");
  auto* chars = app.add_subcommand("characters", "classical characters, faithfulness, comparison with Aut");
  chars->add_flag("--list", c.list, "print every character in cycle notation");
  auto* witness = app.add_subcommand("witness", "evaluate the Pauli lift model");
  witness->add_option("--theta", c.theta, "angle in radians")->capture_default_str();
  for (auto* s : {analyze, present, verify, chars, witness}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  c.include_label_independence = !no_rv;
  if (analyze->parsed()) c.command = Command::Analyze;
  if (present->parsed()) c.command = Command::Present;
  if (verify->parsed()) c.command = Command::Verify;
  if (chars->parsed()) c.command = Command::Characters;
  if (witness->parsed()) c.command = Command::Witness;
  // The presentation is a JSON artifact; everything else defaults to a table.
  if (format.empty()) c.format = c.command == Command::Present ? Format::Json : Format::Text;
  else c.format = format == "json" ? Format::Json : Format::Text;
  return run(c, std::cout, std::cerr);
}

}  // namespace msym::cli
