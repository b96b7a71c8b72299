#include <cstdio>
#include <cstdlib>
#include <string>

#include "jspec/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& c : jspec::run_acceptance(only)) {
    for (const auto& k : c.checks)
      std::printf("  check %-40s %s measured=%.3e bound=%.3e\n", k.id.c_str(), k.pass ? "PASS" : "FAIL",
                  k.measured, k.bound);
    std::printf("CRITERION %2d %s  %s  (%.2f s)\n", c.number, c.pass ? "PASS" : "FAIL", c.title.c_str(),
                c.seconds);
    std::fflush(stdout);
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
