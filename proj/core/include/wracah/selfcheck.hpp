#pragma once

#include <string>

#include "wracah/symbols.hpp"

namespace wracah {

struct SelfCheckOptions {
  HalfInt j_max = HalfInt(3);  // largest angular momentum audited
  int samples = 200;           // random tensor-element tuples
  unsigned seed = 777u;
  double tolerance = kDefaultTolerance;
};

struct SelfCheckReport {
  bool ok = true;
  int total = 0;
  int failed = 0;
  std::string text;  // full human-readable report, one line per check
};

// Deterministic consistency audit of one scheme: character-table identities,
// canonical irrep matrices, coupling tables, reduction tables, adapted
// metrics, the two tensor-matrix-element routes on random samples, and
// isoscalar reconstruction. Runs with the same options always produce
// byte-identical reports.
SelfCheckReport run_selfcheck(const Scheme& scheme,
                              const SelfCheckOptions& options = {});

}  // namespace wracah
