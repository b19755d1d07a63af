#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "msym/verify.hpp"

namespace msym::cli {

enum class Command { Analyze, Present, Verify, Characters, Witness };
enum class Format { Json, Text };

struct RunConfig {
  Command command = Command::Analyze;
  std::string graph_path;
  int depth = 3;
  std::uint64_t nodes = 10'000'000;
  double tolerance = 1e-10;
  bool include_label_independence = true;
  Format format = Format::Text;
  unsigned workers = 1;
  std::optional<std::string> explain;
  std::string which = "q";   // present: q | qprime | lift
  double theta = 0.7853981633974483;
  bool list = false;         // characters: print each one in cycle notation
};

/// Throws msym::Error(InvalidArgument) when a budget or tolerance is out of range.
void validate(const RunConfig& config);

/// Verifier options used by the verify subcommand. Each obligation's prover
/// budget is capped well below --nodes, which mostly drives enumeration.
VerifyOptions verify_options(const RunConfig& config);

/// Exit status: 0 all checks pass, 2 only Undecided outcomes, 1 failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a config and runs it; handles --help and usage errors.
int main_entry(int argc, char** argv);

}  // namespace msym::cli
