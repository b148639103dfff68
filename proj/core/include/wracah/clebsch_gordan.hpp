#pragma once

#include <vector>

#include "wracah/irreps.hpp"

namespace wracah {

// One coupled copy: columns are the coupled partners |beta Gamma gamma> as
// vectors over the product basis |gamma1 gamma2| (gamma2 fastest), i.e.
//   |beta Gamma gamma> = sum_{g1 g2} coeff((g1-1)*d2 + (g2-1), gamma-1) |g1 g2>.
struct GroupCG {
  int irrep1 = -1, irrep2 = -1;  // factors
  int irrep = -1;                // coupled irrep
  int beta = 1;                  // 1-based multiplicity index
  Eigen::MatrixXcd coeff;        // (d1*d2) x d
};

// Full decomposition of irrep1 (x) irrep2 into canonical-partner copies.
// Beta order and phases are deterministic: projector images of the product
// basis are orthonormalized in lexicographic seed order, and each copy is
// scaled so its first nonzero coefficient is real positive. Copies satisfy
//   (D1 (x) D2)(g) . coeff = coeff . D(g)   for every element g
// and the stacked copies form a unitary change of basis.
std::vector<GroupCG> group_cg(const DoubleGroup& group,
                              const CharacterTable& table,
                              const std::vector<Irrep>& irreps, int irrep1,
                              int irrep2, double tol = kDefaultTolerance);

// Kronecker product helper, row (i1,i2) -> i1*rows2+i2 (second index fastest).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace wracah
