#include "wracah/crystal_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wracah/error.hpp"

namespace wracah {

CrystalFieldParams CrystalFieldParams::octahedral(double b40) {
  double ratio = std::sqrt(5.0 / 14.0);
  CrystalFieldParams p;
  p.symmetry = "O";
  p.terms = {{4, 0, b40}, {4, 4, b40 * ratio}, {4, -4, b40 * ratio}};
  return p;
}

CrystalFieldParams CrystalFieldParams::tetragonal(double b20, double b40,
                                                  double b44) {
  CrystalFieldParams p;
  p.symmetry = "D4";
  p.terms = {{2, 0, b20}, {4, 0, b40}, {4, 4, b44}, {4, -4, b44}};
  return p;
}

CrystalFieldParams CrystalFieldParams::trigonal(double b20, double b40,
                                                double b43) {
  CrystalFieldParams p;
  p.symmetry = "D3";
  p.terms = {{2, 0, b20}, {4, 0, b40}, {4, 3, b43}, {4, -3, -b43}};
  return p;
}

std::vector<std::string> CrystalFieldParams::validate(int ell) const {
  if (ell < 0) fail(Errc::bad_input, "orbital quantum number ell must be >= 0");
  std::vector<std::string> warnings;

  std::map<std::pair<int, int>, Complex> amplitude;
  for (const auto& term : terms) {
    if (term.k < 0)
      fail(Errc::bad_input, "crystal-field rank k must be >= 0");
    if (std::abs(term.q) > term.k)
      fail(Errc::bad_input, "crystal-field component |q| exceeds its rank k");
    if (!std::isfinite(std::real(term.amplitude)) ||
        !std::isfinite(std::imag(term.amplitude)))
      fail(Errc::bad_input, "crystal-field amplitude is not finite");
    amplitude[{term.k, term.q}] += term.amplitude;
    if (term.k > 2 * ell)
      warnings.push_back("term k=" + std::to_string(term.k) +
                         " q=" + std::to_string(term.q) +
                         " cannot contribute for ell=" + std::to_string(ell) +
                         " (k > 2*ell)");
  }

  double scale = 0.0;
  for (const auto& [kq, b] : amplitude) scale = std::max(scale, std::abs(b));
  for (const auto& [kq, b] : amplitude) {
    Complex partner(0, 0);
    auto it = amplitude.find({kq.first, -kq.second});
    if (it != amplitude.end()) partner = it->second;
    Complex expected =
        (kq.second % 2 == 0 ? 1.0 : -1.0) * std::conj(b);
    if (std::abs(partner - expected) > 1e-12 * std::max(scale, 1.0))
      fail(Errc::bad_input,
           "non-hermitian parameters: B(" + std::to_string(kq.first) + "," +
               std::to_string(-kq.second) + ") must equal (-1)^q conj(B(" +
               std::to_string(kq.first) + "," + std::to_string(kq.second) +
               "))");
  }
  return warnings;
}

CrystalFieldMatrix cf_matrix_spherical(const CrystalFieldParams& params,
                                       int ell) {
  CrystalFieldMatrix out;
  out.ell = ell;
  out.warnings = params.validate(ell);

  const HalfInt l(ell);
  const auto ms = projection_labels(l);
  const int n = 2 * ell + 1;
  out.matrix = Eigen::MatrixXcd::Zero(n, n);

  for (const auto& term : params.terms) {
    if (term.k > 2 * ell) continue;
    const HalfInt k(term.k), q(term.q);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        out.matrix(a, b) += term.amplitude *
                            static_cast<double>(parity(l - ms[a])) *
                            three_jm(l, k, l, -ms[a], q, ms[b]);
  }

  double herm =
      (out.matrix - out.matrix.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, out.matrix.cwiseAbs().maxCoeff());
  if (herm > 1e-12 * scale)
    fail(Errc::inconsistent_table,
         "crystal-field matrix failed the hermiticity cross-check");
  return out;
}

namespace {

AdaptedCrystalField adapt(const CrystalFieldParams& params, int ell,
                          const Scheme& scheme, const ReductionTable& table,
                          const std::vector<std::string>& parent_names) {
  CrystalFieldMatrix spherical = cf_matrix_spherical(params, ell);
  AdaptedCrystalField out;
  out.ell = ell;
  out.warnings = spherical.warnings;
  out.labels = table.labels;
  out.parent_names = parent_names;
  out.irrep_names.reserve(out.labels.size());
  for (const auto& label : out.labels)
    out.irrep_names.push_back(scheme.table().aliases[label.irrep]);
  out.matrix = table.coeffs.adjoint() * spherical.matrix * table.coeffs;

  // Ideal form: block diagonal in Gamma, proportional to the identity in
  // gamma, entries depending on the copy indices only.
  const int n = static_cast<int>(out.labels.size());
  Eigen::MatrixXcd ideal = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const StateLabel &la = out.labels[a], &lb = out.labels[b];
      if (la.irrep != lb.irrep || la.gamma != lb.gamma) continue;
      // Average the diagonal-gamma entries of this (a_row, a_col) pair.
      const int dim = scheme.irrep(la.irrep).dim;
      Complex acc(0, 0);
      for (int g = 1; g <= dim; ++g) {
        int ra = table.column(la.irrep, la.a, g);
        int rb = table.column(lb.irrep, lb.a, g);
        acc += out.matrix(ra, rb);
      }
      ideal(a, b) = acc / static_cast<double>(dim);
    }
  out.off_block_norm = (out.matrix - ideal).norm();
  return out;
}

}  // namespace

AdaptedCrystalField cf_matrix_adapted(const CrystalFieldParams& params,
                                      int ell, const Scheme& scheme) {
  const ReductionTable& table = scheme.reduction(HalfInt(ell));
  return adapt(params, ell, scheme, table, {});
}

AdaptedCrystalField cf_matrix_adapted(const CrystalFieldParams& params,
                                      int ell, const Scheme& parent,
                                      const Scheme& child) {
  ChainTable chain = chain_labels(parent, child, HalfInt(ell));
  std::vector<std::string> parent_names;
  parent_names.reserve(chain.parents.size());
  for (std::size_t i = 0; i < chain.parents.size(); ++i) {
    const ChainParent& p = chain.parents[i];
    std::string name = parent.table().aliases[p.parent_irrep];
    if (parent.branching(chain.table.j).multiplicity[p.parent_irrep] > 1)
      name += "(" + std::to_string(p.parent_copy) + ")";
    if (p.residual > 1) name += "#" + std::to_string(p.residual);
    parent_names.push_back(std::move(name));
  }
  AdaptedCrystalField out = adapt(params, ell, child, chain.table, parent_names);
  out.parent_group = parent.group().name;
  return out;
}

namespace {

LevelScheme cluster(const Eigen::MatrixXcd& h, int ell,
                    const std::vector<std::string>& state_irreps,
                    const std::vector<std::string>& state_parents,
                    double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    fail(Errc::numerical_degeneracy, "eigen-decomposition failed");
  Eigen::VectorXd ev = solver.eigenvalues();
  const int n = static_cast<int>(ev.size());

  LevelScheme out;
  out.ell = ell;
  double scale = std::max({ev(n - 1) - ev(0), std::abs(ev(0)),
                           std::abs(ev(n - 1))});
  out.cluster_tolerance = rel_tol * scale;

  int begin = 0;
  while (begin < n) {
    int end = begin + 1;
    while (end < n && ev(end) - ev(end - 1) <= out.cluster_tolerance) ++end;
    Level level;
    level.degeneracy = end - begin;
    double sum = 0.0;
    for (int i = begin; i < end; ++i) sum += ev(i);
    level.energy = sum / level.degeneracy;
    for (int i = begin; i < end; ++i) {
      if (!state_irreps.empty()) level.irreps.push_back(state_irreps[i]);
      if (!state_parents.empty()) level.parents.push_back(state_parents[i]);
    }
    out.levels.push_back(std::move(level));
    begin = end;
  }
  return out;
}

}  // namespace

LevelScheme level_scheme(const CrystalFieldMatrix& cf, double rel_tol) {
  return cluster(cf.matrix, cf.ell, {}, {}, rel_tol);
}

LevelScheme level_scheme(const AdaptedCrystalField& cf, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cf.matrix);
  if (solver.info() != Eigen::Success)
    fail(Errc::numerical_degeneracy, "eigen-decomposition failed");

  // Label every eigenstate by the irrep block supporting its eigenvector.
  const int n = static_cast<int>(cf.labels.size());
  std::vector<std::string> irreps(n), parents(n);
  for (int col = 0; col < n; ++col) {
    Eigen::VectorXcd v = solver.eigenvectors().col(col);
    std::map<std::string, double> irrep_weight, parent_weight;
    for (int row = 0; row < n; ++row) {
      double w = std::norm(v(row));
      irrep_weight[cf.irrep_names[row]] += w;
      if (!cf.parent_names.empty()) parent_weight[cf.parent_names[row]] += w;
    }
    auto best = std::max_element(
        irrep_weight.begin(), irrep_weight.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    irreps[col] = best->second > 1.0 - 1e-6 ? best->first : "mixed";
    if (!cf.parent_names.empty()) {
      auto bp = std::max_element(
          parent_weight.begin(), parent_weight.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      parents[col] = bp->second > 1.0 - 1e-6 ? bp->first : "mixed";
    }
  }

  LevelScheme scheme = cluster(cf.matrix, cf.ell, irreps,
                               cf.parent_names.empty() ? std::vector<std::string>{}
                                                       : parents,
                               rel_tol);
  return scheme;
}

}  // namespace wracah
