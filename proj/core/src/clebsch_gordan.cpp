#include "wracah/clebsch_gordan.hpp"

#include <cmath>

#include "wracah/error.hpp"

namespace wracah {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Transfer operator P_{gg'} = (dim/|G|) sum_h conj(D(h)_{gg'}) R(h); maps the
// g'-th partner of any copy inside R to the g-th partner of the same copy.
Eigen::MatrixXcd transfer(const DoubleGroup& group, const Irrep& target,
                          const std::vector<Eigen::MatrixXcd>& rep, int g,
                          int gp) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(rep[0].rows(), rep[0].cols());
  for (int e = 0; e < group.order(); ++e)
    out += std::conj(target.matrices[e](g, gp)) * rep[e];
  return out * (static_cast<double>(target.dim) / group.order());
}

}  // namespace

std::vector<GroupCG> group_cg(const DoubleGroup& group,
                              const CharacterTable& table,
                              const std::vector<Irrep>& irreps, int irrep1,
                              int irrep2, double tol) {
  const int nr = table.num_irreps();
  if (irrep1 < 0 || irrep1 >= nr || irrep2 < 0 || irrep2 >= nr)
    fail(Errc::invalid_label, "irrep index out of range in group_cg");

  const Irrep& a = irreps[irrep1];
  const Irrep& b = irreps[irrep2];
  const int n = group.order();
  const int dim_product = a.dim * b.dim;

  std::vector<Eigen::MatrixXcd> product;
  product.reserve(n);
  for (int e = 0; e < n; ++e)
    product.push_back(kron(a.matrices[e], b.matrices[e]));

  std::vector<int> mult = kron_decompose(table, irrep1, irrep2);

  std::vector<GroupCG> out;
  Eigen::MatrixXcd stacked(dim_product, dim_product);
  int stacked_cols = 0;

  for (int r = 0; r < nr; ++r) {
    if (mult[r] == 0) continue;
    const Irrep& target = irreps[r];

    Eigen::MatrixXcd p11 = transfer(group, target, product, 0, 0);

    // Orthonormal seeds w_beta inside the image of P_11, lexicographic order.
    Eigen::MatrixXcd seeds(dim_product, mult[r]);
    int found = 0;
    for (int s = 0; s < dim_product && found < mult[r]; ++s) {
      Eigen::VectorXcd v = p11.col(s);
      for (int k = 0; k < found; ++k) v -= seeds.col(k).dot(v) * seeds.col(k);
      double norm = v.norm();
      if (norm > 1e-6) seeds.col(found++) = v / norm;
    }
    if (found != mult[r])
      fail(Errc::inconsistent_table,
           "coupling projector rank " + std::to_string(found) +
               " disagrees with the character multiplicity " +
               std::to_string(mult[r]) + " for " + table.labels[r]);

    for (int beta = 0; beta < mult[r]; ++beta) {
      GroupCG cg;
      cg.irrep1 = irrep1;
      cg.irrep2 = irrep2;
      cg.irrep = r;
      cg.beta = beta + 1;
      cg.coeff.resize(dim_product, target.dim);
      cg.coeff.col(0) = seeds.col(beta);
      for (int g = 1; g < target.dim; ++g)
        cg.coeff.col(g) = transfer(group, target, product, g, 0) * seeds.col(beta);

      // Phase: first coefficient of modulus > 1e-9 becomes real positive.
      Complex scale(1, 0);
      for (int i = 0; i < dim_product * target.dim; ++i) {
        Complex z = cg.coeff(i % dim_product, i / dim_product);
        if (std::abs(z) > 1e-9) {
          scale = std::conj(z) / std::abs(z);
          break;
        }
      }
      cg.coeff *= scale;

      stacked.middleCols(stacked_cols, target.dim) = cg.coeff;
      stacked_cols += target.dim;
      out.push_back(std::move(cg));
    }
  }

  if (stacked_cols != dim_product)
    fail(Errc::inconsistent_table,
         "coupled copies do not exhaust the product space");
  double unitary =
      (stacked.adjoint() * stacked -
       Eigen::MatrixXcd::Identity(dim_product, dim_product))
          .cwiseAbs()
          .maxCoeff();
  if (unitary > tol)
    fail(Errc::inconsistent_table,
         "stacked coupling matrix is not unitary within tolerance");

  // Intertwining check on the generators (products of generators follow).
  for (const auto& cg : out) {
    const Irrep& target = irreps[cg.irrep];
    for (int gi : group.generator_indices) {
      double residual =
          (product[gi] * cg.coeff - cg.coeff * target.matrices[gi])
              .cwiseAbs()
              .maxCoeff();
      if (residual > tol)
        fail(Errc::inconsistent_table,
             "coupling copy fails to intertwine the product action");
    }
  }
  return out;
}

}  // namespace wracah
