#pragma once

#include <string>
#include <vector>

#include "wracah/character_table.hpp"
#include "wracah/group.hpp"

namespace wracah {

// Canonical unitary irrep matrices, one per group element, harvested from the
// first restriction D^j that contains the irrep. These matrices are the
// reference for every symmetry-adapted construction: all reduction tables and
// coupling tables carry exactly these partner conventions.
struct Irrep {
  std::string label;
  std::string alias;
  int dim = 0;
  bool spinor = false;
  HalfInt source_j;  // restriction the matrices were extracted from
  std::vector<Eigen::MatrixXcd> matrices;

  const Eigen::MatrixXcd& matrix(int element) const { return matrices[element]; }
};

// Rotation matrices D^j for every group element, in element order.
std::vector<Eigen::MatrixXcd> restriction_matrices(const DoubleGroup& group,
                                                   HalfInt j,
                                                   double tol = kDefaultTolerance);

// Multiplicity of each irrep in the restriction of D^j (character sums).
std::vector<int> restriction_multiplicities(const DoubleGroup& group,
                                            const CharacterTable& table,
                                            HalfInt j);

// Harvests canonical matrices for every irrep by scanning restrictions
// D^0, D^(1/2), D^1, ... up to j_scan_max. Throws scan_exhausted when some
// irrep never appears (never happens for groups in SU(2) by j ~ dim bounds,
// but the guard keeps the loop finite).
std::vector<Irrep> irrep_matrices(const DoubleGroup& group,
                                  const CharacterTable& table,
                                  HalfInt j_scan_max = HalfInt(8),
                                  double tol = kDefaultTolerance,
                                  unsigned seed = 97531u);

// Multiplicity of each irrep in irrep1 (x) irrep2, from characters.
std::vector<int> kron_decompose(const CharacterTable& table, int irrep1,
                                int irrep2);

}  // namespace wracah
