#pragma once

// Command-line driver. Parsing and execution live in the library so tests
// can run commands against string streams.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace topweight {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitDisagreement = 2 };

struct RunConfig {
  std::string command;  // zg, euler, schur, oracle-graphs, oracle-orbifold, oracle-gamma, dump-terms, dump-graphs
  int genus = 0;
  std::optional<int> n;
  std::optional<int> truncation;  // defaults to 3g + 6
  std::string format = "json";    // json, csv, text
  std::optional<std::string> output;
  std::optional<int> decimal;  // digits for lossy decimal renderings
  unsigned jobs = 1;
  int m = 1;
  int r = 0;
  std::vector<int> d;
  bool pure = false;  // dump-graphs: arbitrary instead of injective markings
};

const std::vector<std::string>& command_names();

/// Executes one command. Output goes to `out` (or config.output when set),
/// diagnostics to `err`. Returns an ExitCode value.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (args[0] is the program name) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topweight
