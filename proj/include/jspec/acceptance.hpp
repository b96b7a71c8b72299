#pragma once

#include <string>
#include <vector>

namespace jspec {

struct Check {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct Criterion {
  int number = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass = false;
};

// Runs the end-to-end example checks.  With JSPEC_BREAK=1 in the
// environment every bound is shrunk by 1e-9 so the harness can be seen to fail.
std::vector<Criterion> run_acceptance(const std::vector<int>& only = {});

}  // namespace jspec
