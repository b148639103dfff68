#pragma once

#include <string>
#include <vector>

#include "wracah/clebsch_gordan.hpp"
#include "wracah/irreps.hpp"

namespace wracah {

// How often each irrep occurs when D^j is restricted to the group.
struct BranchingRule {
  HalfInt j;
  std::vector<int> multiplicity;  // per irrep, canonical order

  int total_dim(const std::vector<int>& dims) const;
};

BranchingRule branching_multiplicities(const DoubleGroup& group,
                                       const CharacterTable& table, HalfInt j);

// Symmetry-adapted basis label |j a Gamma gamma>; a and gamma are 1-based.
struct StateLabel {
  HalfInt j;
  int a = 1;      // multiplicity copy of the irrep inside D^j
  int irrep = 0;  // canonical irrep index
  int gamma = 1;  // partner index, 1..dim

  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

// Unitary change of basis |j m> -> |j a Gamma gamma>:
//   |j a Gamma gamma> = sum_m coeffs(m_index, column) |j m>
// Rows follow the descending-m convention; columns are ordered by canonical
// irrep, then copy a, then partner gamma. Every block carries exactly the
// canonical partner conventions of the group's irrep matrices.
struct ReductionTable {
  HalfInt j;
  BranchingRule rule;
  Eigen::MatrixXcd coeffs;        // (2j+1) x (2j+1)
  std::vector<StateLabel> labels; // one per column

  int dim() const { return static_cast<int>(labels.size()); }
  // Column of |j a Gamma gamma>, or -1 when absent.
  int column(int irrep, int a, int gamma) const;
  Complex coefficient(HalfInt m, const StateLabel& label) const;
};

// Deterministic construction via transfer operators on D^j: seeds are the
// descending-m basis vectors, copies are orthonormalized in seed order, and
// each copy is scaled so its largest-modulus coefficient is real positive.
ReductionTable reduction_coefficients(const DoubleGroup& group,
                                      const CharacterTable& table,
                                      const std::vector<Irrep>& irreps,
                                      HalfInt j,
                                      double tol = kDefaultTolerance);

// Chain-adapted table: the subgroup's reduction table with every column
// annotated by the parent (Gamma_high, a_high) block it came from and a
// residual copy index within that block.
struct ChainParent {
  int parent_irrep = -1;  // canonical irrep index in the parent group
  int parent_copy = 1;    // a_high
  int residual = 1;       // copy count inside (parent block, child irrep)
};

struct ChainTable {
  ReductionTable table;             // for the subgroup
  std::vector<ChainParent> parents; // one per column
};

}  // namespace wracah
