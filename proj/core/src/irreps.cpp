#include "wracah/irreps.hpp"

#include <cmath>
#include <random>

#include "wracah/error.hpp"

namespace wracah {

namespace {

// Gram-Schmidt over the columns of the projector applied to the standard
// basis, keeping images with enough residual norm. Seed order (descending m)
// makes the accepted basis deterministic.
Eigen::MatrixXcd orthonormal_image(const Eigen::MatrixXcd& projector,
                                   int expected_rank) {
  const int n = static_cast<int>(projector.rows());
  Eigen::MatrixXcd basis(n, expected_rank);
  int found = 0;
  for (int seed = 0; seed < n && found < expected_rank; ++seed) {
    Eigen::VectorXcd v = projector.col(seed);
    for (int b = 0; b < found; ++b)
      v -= basis.col(b).dot(v) * basis.col(b);
    double norm = v.norm();
    if (norm > 1e-6) basis.col(found++) = v / norm;
  }
  if (found != expected_rank)
    fail(Errc::projection_deficiency,
         "projector rank " + std::to_string(found) +
             " fell short of the expected " + std::to_string(expected_rank));
  return basis;
}

}  // namespace

std::vector<Eigen::MatrixXcd> restriction_matrices(const DoubleGroup& group,
                                                   HalfInt j, double tol) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(group.order());
  for (const auto& g : group.elements) out.push_back(wigner_d(j, g, tol));
  return out;
}

std::vector<int> restriction_multiplicities(const DoubleGroup& group,
                                            const CharacterTable& table,
                                            HalfInt j) {
  auto mats = restriction_matrices(group, j);
  std::vector<int> mult(table.num_irreps(), 0);
  for (int r = 0; r < table.num_irreps(); ++r) {
    Complex acc(0, 0);
    for (int c = 0; c < table.num_classes(); ++c)
      acc += static_cast<double>(table.class_sizes[c]) *
             mats[group.classes[c][0]].trace() * std::conj(table.chi(r, c));
    double m = std::real(acc) / table.group_order;
    long rounded = std::lround(m);
    if (std::abs(m - rounded) > 1e-6 || std::abs(std::imag(acc)) > 1e-6 ||
        rounded < 0)
      fail(Errc::inconsistent_table,
           "restriction multiplicity of " + table.labels[r] +
               " in D^" + j.str() + " is not a nonnegative integer");
    mult[r] = static_cast<int>(rounded);
  }
  return mult;
}

std::vector<Irrep> irrep_matrices(const DoubleGroup& group,
                                  const CharacterTable& table,
                                  HalfInt j_scan_max, double tol,
                                  unsigned seed) {
  const int nr = table.num_irreps();
  const int n = group.order();
  std::vector<Irrep> irreps(nr);
  std::vector<bool> realized(nr, false);
  int remaining = nr;
  std::mt19937 rng(seed);

  for (int tj = 0; tj <= j_scan_max.twice() && remaining > 0; ++tj) {
    HalfInt j = HalfInt::from_twice(tj);
    auto mats = restriction_matrices(group, j, tol);
    auto mult = restriction_multiplicities(group, table, j);

    for (int r = 0; r < nr; ++r) {
      if (realized[r] || mult[r] == 0) continue;
      const int d = table.dims[r];
      const int m = mult[r];

      // Isotypic projector from characters: sums D^j(g) against chi_r(g)*.
      Eigen::MatrixXcd projector =
          Eigen::MatrixXcd::Zero(mats[0].rows(), mats[0].cols());
      for (int e = 0; e < n; ++e)
        projector += std::conj(table.chi(r, group.class_of[e])) * mats[e];
      projector *= static_cast<double>(d) / n;

      Eigen::MatrixXcd basis = orthonormal_image(projector, m * d);

      if (m > 1) {
        // Restrict to the isotypic block, then split one irreducible copy off
        // with a random element of the commutant (matrices commuting with the
        // whole block action). Its eigenspaces of dimension d carry single
        // copies.
        const int md = m * d;
        std::vector<Eigen::MatrixXcd> block;
        block.reserve(group.generator_indices.size());
        for (int gi : group.generator_indices)
          block.push_back(basis.adjoint() * mats[gi] * basis);

        Eigen::MatrixXcd stacked(
            static_cast<int>(block.size()) * md * md, md * md);
        for (std::size_t b = 0; b < block.size(); ++b) {
          // vec(RX - XR) = (I (x) R - R^T (x) I) vec(X)
          Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(md * md, md * md);
          for (int p = 0; p < md; ++p)
            for (int q = 0; q < md; ++q)
              for (int s = 0; s < md; ++s) {
                op(p + q * md, s + q * md) += block[b](p, s);
                op(p + q * md, p + s * md) -= block[b](s, q);
              }
          stacked.middleRows(static_cast<int>(b) * md * md, md * md) = op;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
        int null_dim = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
          if (svd.singularValues()(i) < 1e-8) ++null_dim;
        if (null_dim != m * m)
          fail(Errc::inconsistent_table,
               "commutant dimension " + std::to_string(null_dim) +
                   " does not match multiplicity^2 for " + table.labels[r]);

        bool split = false;
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int attempt = 0; attempt < 24 && !split; ++attempt) {
          Eigen::MatrixXcd element = Eigen::MatrixXcd::Zero(md, md);
          for (int k = 0; k < m * m; ++k) {
            Eigen::VectorXcd v =
                svd.matrixV().col(svd.matrixV().cols() - 1 - k);
            Complex c(uni(rng), uni(rng));
            element += c * Eigen::Map<const Eigen::MatrixXcd>(v.data(), md, md);
          }
          Eigen::MatrixXcd hermitian = 0.5 * (element + element.adjoint());
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
          Eigen::VectorXd ev = es.eigenvalues();
          double spread = std::max(1.0, ev(md - 1) - ev(0));
          // Find a cluster of exactly d eigenvalues, isolated from the rest.
          for (int lo = 0; lo + d <= md && !split; ++lo) {
            double width = ev(lo + d - 1) - ev(lo);
            bool isolated =
                (lo == 0 || ev(lo) - ev(lo - 1) > 1e-6 * spread) &&
                (lo + d == md || ev(lo + d) - ev(lo + d - 1) > 1e-6 * spread);
            if (width < 1e-8 * spread && isolated) {
              basis = basis * es.eigenvectors().middleCols(lo, d);
              split = true;
            }
          }
        }
        if (!split)
          fail(Errc::numerical_degeneracy,
               "failed to split a multiplicity-" + std::to_string(m) +
                   " isotypic block for " + table.labels[r]);
      }

      Irrep& irrep = irreps[r];
      irrep.label = table.labels[r];
      irrep.alias = table.aliases[r];
      irrep.dim = d;
      irrep.spinor = table.spinor[r];
      irrep.source_j = j;
      irrep.matrices.reserve(n);
      for (int e = 0; e < n; ++e)
        irrep.matrices.push_back(basis.adjoint() * mats[e] * basis);

      // The harvested matrices must reproduce the character row exactly.
      for (int c = 0; c < table.num_classes(); ++c) {
        Complex trace = irrep.matrices[group.classes[c][0]].trace();
        if (std::abs(trace - table.chi(r, c)) > 1e-7)
          fail(Errc::inconsistent_table,
               "trace of harvested matrices deviates from the character of " +
                   table.labels[r]);
      }
      realized[r] = true;
      --remaining;
    }
  }

  if (remaining > 0) {
    std::string missing;
    for (int r = 0; r < nr; ++r)
      if (!realized[r]) missing += (missing.empty() ? "" : ", ") + table.labels[r];
    fail(Errc::scan_exhausted,
         "irreps " + missing + " never appeared in restrictions up to j=" +
             j_scan_max.str());
  }
  return irreps;
}

std::vector<int> kron_decompose(const CharacterTable& table, int irrep1,
                                int irrep2) {
  const int nr = table.num_irreps();
  std::vector<int> mult(nr, 0);
  for (int r = 0; r < nr; ++r) {
    Complex acc(0, 0);
    for (int c = 0; c < table.num_classes(); ++c)
      acc += static_cast<double>(table.class_sizes[c]) * table.chi(irrep1, c) *
             table.chi(irrep2, c) * std::conj(table.chi(r, c));
    double m = std::real(acc) / table.group_order;
    long rounded = std::lround(m);
    if (std::abs(m - rounded) > 1e-6 || std::abs(std::imag(acc)) > 1e-6 ||
        rounded < 0)
      fail(Errc::inconsistent_table,
           "Kronecker multiplicity is not a nonnegative integer");
    mult[r] = static_cast<int>(rounded);
  }
  return mult;
}

}  // namespace wracah
