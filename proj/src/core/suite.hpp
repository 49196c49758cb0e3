#pragma once

#include <string>
#include <vector>

#include "core/verify.hpp"

namespace monoheight {

struct SuiteCounts {
  int functional = 100;
  int recurrence = 50;
  int lower_bound = 50;
  int zero_height = 20;
  int semiconjugacy = 20;
};

struct IdentityStats {
  std::string name;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  int hypothesis_skipped = 0;
};

struct SuiteSummary {
  unsigned long seed = 0;
  std::vector<IdentityStats> identities;
  bool all_passed = true;
  std::string first_failure;
};

// Randomized property suites over the paper's identities. Case inputs are
// generated sequentially from the seed, so results are identical for a given
// seed regardless of the worker count.
SuiteSummary run_suite(unsigned long seed, const SuiteCounts& counts, int workers = 1,
                       const VerifyOptions& opts = {});

// Random instance generators shared with the tests.
IntMatrix random_expanding_matrix(unsigned long seed_mix, int dim, int lo = -3, int hi = 3);
TorusPoint random_exponent_point(unsigned long seed_mix, int dim, int emax = 6);
IntMatrix random_single_eigenvalue_nondiag(unsigned long seed_mix, int dim);

}  // namespace monoheight
