#include <iostream>

#include "superpar/cli.hpp"

int main(int argc, char** argv) {
  superpar::RunConfig cfg;
  if (int rc = superpar::parse_args(argc, argv, cfg, std::cout, std::cerr); rc >= 0) return rc;
  try {
    return superpar::run(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return superpar::kExitUsage;
  }
}
