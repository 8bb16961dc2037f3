#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dgn {

enum ExitCode : int { kExitPass = 0, kExitMathFailure = 1, kExitInputError = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  int n = -1, k = -1;  // -1: take from the document or use the command default
  std::string out;     // empty: write to the output stream
  std::string format = "json";
  bool star = false;
  int sign_pattern = -1;  // laws only; -1 keeps the pinned pattern
};

// Parses argv and runs one command. Reports go to `out` (or --out); diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dgn
