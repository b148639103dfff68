#pragma once

#include <string>
#include <vector>

#include "wracah/group.hpp"

namespace wracah {

// Character table of a double group. Irrep rows are in canonical order:
// trivial first, then ascending dimension, ties broken lexicographically by
// character values on the non-identity classes (descending real part, then
// descending imaginary part). Canonical labels are "G0", "G1", ...; aliases
// carry conventional names (A1, E, T2, E1/2, G3/2, ...) where the usual
// rules identify them, and fall back to the canonical label otherwise.
struct CharacterTable {
  Eigen::MatrixXcd chi;             // chi(irrep, class)
  std::vector<int> dims;
  std::vector<bool> spinor;         // character at -identity equals -dim
  std::vector<std::string> labels;
  std::vector<std::string> aliases;
  std::vector<int> class_sizes;
  int group_order = 0;
  int minus_identity_class = -1;

  int num_irreps() const { return static_cast<int>(dims.size()); }
  int num_classes() const { return static_cast<int>(class_sizes.size()); }
  Complex character(int irrep, int cls) const { return chi(irrep, cls); }
  // Accepts a canonical label or an alias; -1 when absent.
  int find(const std::string& name) const;
  // Index of the irrep with conjugate characters (always exists).
  int conjugate_irrep(int irrep, double tol = kDefaultTolerance) const;
};

// Burnside method: simultaneous diagonalization of the class-multiplication
// matrices through a seeded random linear combination, retried with a fresh
// combination when eigenvalue separation fails. Deterministic for fixed seed.
CharacterTable character_table(const DoubleGroup& group,
                               double tol = kDefaultTolerance,
                               unsigned seed = 20240811u);

}  // namespace wracah
