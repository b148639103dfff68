#include "wracah/branching.hpp"

#include <cmath>

#include "wracah/error.hpp"

namespace wracah {

int BranchingRule::total_dim(const std::vector<int>& dims) const {
  int total = 0;
  for (std::size_t r = 0; r < multiplicity.size(); ++r)
    total += multiplicity[r] * dims[r];
  return total;
}

BranchingRule branching_multiplicities(const DoubleGroup& group,
                                       const CharacterTable& table,
                                       HalfInt j) {
  if (j.twice() < 0) fail(Errc::invalid_label, "negative j=" + j.str());
  BranchingRule rule;
  rule.j = j;
  rule.multiplicity = restriction_multiplicities(group, table, j);
  if (rule.total_dim(table.dims) != j.twice() + 1)
    fail(Errc::inconsistent_table,
         "branching multiplicities of D^" + j.str() +
             " do not exhaust the dimension 2j+1");
  return rule;
}

int ReductionTable::column(int irrep, int a, int gamma) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].irrep == irrep && labels[i].a == a && labels[i].gamma == gamma)
      return static_cast<int>(i);
  return -1;
}

Complex ReductionTable::coefficient(HalfInt m, const StateLabel& label) const {
  int col = column(label.irrep, label.a, label.gamma);
  if (col < 0)
    fail(Errc::invalid_label, "no adapted state with the requested label");
  return coeffs(projection_index(j, m), col);
}

namespace {

// Largest-modulus coefficient of the first partner column becomes real
// positive; index ties cannot occur at the modulus maximum with exact input,
// so the first maximum in row order is used.
Complex copy_phase(const Eigen::VectorXcd& column) {
  int arg = 0;
  double best = -1.0;
  for (int i = 0; i < column.size(); ++i)
    if (std::abs(column(i)) > best + 1e-14) {
      best = std::abs(column(i));
      arg = i;
    }
  Complex z = column(arg);
  return std::conj(z) / std::abs(z);
}

}  // namespace

ReductionTable reduction_coefficients(const DoubleGroup& group,
                                      const CharacterTable& table,
                                      const std::vector<Irrep>& irreps,
                                      HalfInt j, double tol) {
  ReductionTable out;
  out.j = j;
  out.rule = branching_multiplicities(group, table, j);

  const int n = j.twice() + 1;
  auto rep = restriction_matrices(group, j, tol);

  out.coeffs.resize(n, n);
  int next_col = 0;

  for (int r = 0; r < table.num_irreps(); ++r) {
    const int mult = out.rule.multiplicity[r];
    if (mult == 0) continue;
    const Irrep& irrep = irreps[r];
    const int d = irrep.dim;

    // Transfer operators P_gg' built on the canonical matrices of this irrep.
    std::vector<Eigen::MatrixXcd> p_g0(d);
    for (int g = 0; g < d; ++g) {
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
      for (int e = 0; e < group.order(); ++e)
        acc += std::conj(irrep.matrices[e](g, 0)) * rep[e];
      p_g0[g] = acc * (static_cast<double>(d) / group.order());
    }

    // Copies a = 1..mult: seed the first-partner projector with the
    // descending-m basis vectors, orthonormalize survivors in seed order.
    Eigen::MatrixXcd seeds(n, mult);
    int found = 0;
    for (int s = 0; s < n && found < mult; ++s) {
      Eigen::VectorXcd v = p_g0[0].col(s);
      for (int k = 0; k < found; ++k) v -= seeds.col(k).dot(v) * seeds.col(k);
      double norm = v.norm();
      if (norm > 1e-6) seeds.col(found++) = v / norm;
    }
    if (found != mult)
      fail(Errc::projection_deficiency,
           "projector for " + table.labels[r] + " inside D^" + j.str() +
               " produced " + std::to_string(found) + " copies, expected " +
               std::to_string(mult));

    for (int a = 0; a < mult; ++a) {
      Eigen::MatrixXcd block(n, d);
      block.col(0) = seeds.col(a);
      for (int g = 1; g < d; ++g) block.col(g) = p_g0[g] * seeds.col(a);
      block *= copy_phase(block.col(0));

      for (int g = 0; g < d; ++g) {
        out.coeffs.col(next_col + g) = block.col(g);
        out.labels.push_back(StateLabel{j, a + 1, r, g + 1});
      }
      next_col += d;
    }
  }

  if (next_col != n)
    fail(Errc::inconsistent_table,
         "adapted columns do not exhaust the space of D^" + j.str());

  double unitary = (out.coeffs.adjoint() * out.coeffs -
                    Eigen::MatrixXcd::Identity(n, n))
                       .cwiseAbs()
                       .maxCoeff();
  if (unitary > tol)
    fail(Errc::inconsistent_table,
         "reduction table of D^" + j.str() + " is not unitary within tolerance");

  return out;
}

}  // namespace wracah
