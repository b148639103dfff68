#pragma once

#include <string>
#include <vector>

#include "wracah/scheme.hpp"

namespace wracah {

// One crystal-field term B_kq multiplying the unit-tensor component U^(k)_q.
struct CrystalFieldTerm {
  int k = 0;
  int q = 0;
  Complex amplitude;  // B_kq
};

// One-electron crystal-field parameter set. The radial scale is absorbed in
// the amplitudes (unit-tensor convention: reduced matrix element 1), so all
// energies are in units of the chosen B scale.
struct CrystalFieldParams {
  std::vector<CrystalFieldTerm> terms;
  std::string symmetry = "custom";

  // B40 * { U40 + sqrt(5/14) (U44 + U4-4) }: octahedral field with the
  // fourfold axes along the coordinate axes. B40 > 0 puts the 3-fold level
  // below the 2-fold one for a d electron.
  static CrystalFieldParams octahedral(double b40);
  // Tetragonal distortion: B20 U20 + B40 U40 + B44 (U44 + U4-4).
  static CrystalFieldParams tetragonal(double b20, double b40, double b44);
  // Trigonal field (threefold axis along z): B20 U20 + B40 U40
  // + B43 (U43 - U4-3).
  static CrystalFieldParams trigonal(double b20, double b40, double b43);

  // Hermiticity (B_k,-q = (-1)^q conj(B_kq)) and label sanity. Throws
  // Error(bad_input); returns warnings for terms that cannot contribute
  // (k > 2*ell).
  std::vector<std::string> validate(int ell) const;
};

struct CrystalFieldMatrix {
  int ell = 2;
  Eigen::MatrixXcd matrix;  // (2l+1) x (2l+1) over descending m
  std::vector<std::string> warnings;
};

// H(m1, m2) = sum_kq B_kq (-1)^(l - m1) 3jm(l k l; -m1 q m2).
CrystalFieldMatrix cf_matrix_spherical(const CrystalFieldParams& params,
                                       int ell);

struct AdaptedCrystalField {
  int ell = 2;
  Eigen::MatrixXcd matrix;  // over adapted columns of the reduction table
  std::vector<StateLabel> labels;
  std::vector<std::string> irrep_names;   // display alias per column
  std::vector<std::string> parent_names;  // chain annotation, may be empty
  std::string parent_group;               // chain parent name, may be empty
  // Frobenius distance from the ideal form (diagonal in Gamma and gamma,
  // gamma-independent); nonzero values diagnose symmetry leakage of the
  // parameters relative to the chosen group.
  double off_block_norm = 0.0;
  std::vector<std::string> warnings;
};

AdaptedCrystalField cf_matrix_adapted(const CrystalFieldParams& params,
                                      int ell, const Scheme& scheme);
// Same, but with basis columns labelled along the chain parent > child.
AdaptedCrystalField cf_matrix_adapted(const CrystalFieldParams& params,
                                      int ell, const Scheme& parent,
                                      const Scheme& child);

struct Level {
  double energy = 0.0;
  int degeneracy = 0;
  std::vector<std::string> irreps;   // one entry per member state
  std::vector<std::string> parents;  // aligned with irreps; empty if no chain
};

struct LevelScheme {
  int ell = 2;
  std::vector<Level> levels;  // ascending energy
  double cluster_tolerance = 0.0;
};

// Eigenvalues clustered with tolerance rel_tol * spectral scale; adapted
// version labels each state by the irrep block carrying its eigenvector.
LevelScheme level_scheme(const CrystalFieldMatrix& cf, double rel_tol = 1e-8);
LevelScheme level_scheme(const AdaptedCrystalField& cf, double rel_tol = 1e-8);

}  // namespace wracah
