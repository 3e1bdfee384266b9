#pragma once

#include <string>
#include <vector>

namespace mzi::verify {

struct CheckResult {
  std::string name;
  int n_photons = 0;
  double lambda = 1.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Oracle-vs-closed-form validation suite for N = 1..max_n (max 10):
// Q-matrix closed form against the direct sum, both against the Fock
// oracle entry by entry, lossless parity, the lambda^N mean law, the
// second-moment quadratic form, and oracle unitarity/norm conservation.
std::vector<CheckResult> run_all(int max_n);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace mzi::verify
