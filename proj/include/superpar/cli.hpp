#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "superpar/group.hpp"

namespace superpar {

struct RunConfig {
  std::vector<int> blocks;
  int q = 0;
  std::vector<std::string> checks;  ///< empty: no verification
  std::string output_path;          ///< empty: standard output
  std::string format = "json";
  std::uint64_t max_group_order = Bounds{}.max_universe;  ///< largest |P| enumerated
  std::uint64_t seed = 1;
  int threads = 0;
  std::string input_path;  ///< re-verify a result file instead of a fresh config
};

enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitFail = 2, kExitSkipped = 3 };

/// Fills `cfg` from the command line. Returns -1 when the run should go
/// ahead, otherwise the exit code (0 after --help).
int parse_args(int argc, char** argv, RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Computes the table, runs the checks and writes the result.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace superpar
