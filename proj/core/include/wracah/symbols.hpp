#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "wracah/scheme.hpp"

namespace wracah {

// Dense table of symmetry-adapted coupling symbols for one (j1, j2, j3)
// triple, indexed by adapted labels in reduction-table column order.
struct SymbolTable {
  HalfInt j1, j2, j3;
  std::vector<StateLabel> labels1, labels2, labels3;
  std::vector<Complex> values;  // ((i1*n2)+i2)*n3 + i3

  int n1() const { return static_cast<int>(labels1.size()); }
  int n2() const { return static_cast<int>(labels2.size()); }
  int n3() const { return static_cast<int>(labels3.size()); }
  Complex value(int i1, int i2, int i3) const {
    return values[(static_cast<std::size_t>(i1) * n2() + i2) * n3() + i3];
  }
};

// One reduced coupling factor: (j2 a2 Gamma2 + k ak Gammak | j1 a1 beta Gamma1).
struct IsoscalarFactor {
  HalfInt j2, k, j1;
  int a2 = 1, irrep2 = -1;
  int ak = 1, irrepk = -1;
  int a1 = 1, irrep1 = -1;
  int beta = 1;
  Complex value;
};

struct IsoscalarSet {
  HalfInt j1, j2, k;
  std::vector<IsoscalarFactor> factors;
  double max_residual = 0.0;  // worst reconstruction error over all f values
};

// Evaluates the symmetry-adapted symbols of one scheme, memoizing whole
// (j1,j2,j3) tables. Thread-safe for concurrent reads.
class SymbolStore {
 public:
  explicit SymbolStore(const Scheme& scheme) : scheme_(scheme) {}

  const Scheme& scheme() const { return scheme_; }

  // Coupling coefficient f(j1 j2 k; c1 c2 ck): the matrix element skeleton
  // with a (-1)^(j1-m1) contragredient first slot; first reduction
  // coefficient conjugated, the other two plain.
  const SymbolTable& f_table(HalfInt j1, HalfInt j2, HalfInt k);
  Complex f(const StateLabel& c1, const StateLabel& c2, const StateLabel& ck);

  // Symmetrized 3-symbol: plain 3-jm contracted against three conjugated
  // reduction coefficients.
  const SymbolTable& fbar_table(HalfInt j1, HalfInt j2, HalfInt j3);
  Complex fbar(const StateLabel& c1, const StateLabel& c2,
               const StateLabel& c3);

  // Adapted metric over the labels of one j (rows/cols in reduction-table
  // column order). Unitary; transpose equals (-1)^(2j) times itself; the
  // product with its own conjugate is (-1)^(2j) times the identity.
  Eigen::MatrixXcd two_j_matrix(HalfInt j);
  // Same object through the j3=0 slice of the 3-symbol (dual route).
  Eigen::MatrixXcd two_j_matrix_from_coupling(HalfInt j);
  Complex two_j(const StateLabel& c1, const StateLabel& c2);

  // Matrix element of the ck component of a rank-k irreducible tensor
  // between adapted states, given the reduced matrix element. Metric route:
  // contracts the adapted metric with the conjugated 3-symbol over all
  // intermediate labels of j1.
  Complex wigner_eckart(const StateLabel& c1, const StateLabel& ck,
                        const StateLabel& c2, Complex reduced);
  // Factorized route: reduced times f(j1 j2 k; c1 c2 ck). Equal to the
  // metric route for every unitary reduction table.
  Complex wigner_eckart_f(const StateLabel& c1, const StateLabel& ck,
                          const StateLabel& c2, Complex reduced);

  // Racah factorization of the whole (j1, j2, k) family of f values into
  // isoscalar factors times group Clebsch-Gordan coefficients, solved by
  // least squares per (a1 Gamma1, a2 Gamma2, ak Gammak) channel. With
  // strict=true a residual above the scheme tolerance throws
  // Error(convention_mismatch); otherwise it is only reported.
  IsoscalarSet isoscalar_factors(HalfInt j1, HalfInt j2, HalfInt k,
                                 bool strict = true);

 private:
  const SymbolTable& table(std::map<std::tuple<int, int, int>,
                                    std::unique_ptr<SymbolTable>>& cache,
                           HalfInt j1, HalfInt j2, HalfInt j3, bool is_f);

  const Scheme& scheme_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, std::unique_ptr<SymbolTable>> f_;
  std::map<std::tuple<int, int, int>, std::unique_ptr<SymbolTable>> fbar_;
};

}  // namespace wracah
