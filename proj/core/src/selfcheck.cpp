#include "wracah/selfcheck.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "wracah/io.hpp"

namespace wracah {

namespace {

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size() + 1, ' ');
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd spherical_metric_matrix(HalfInt j) {
  const auto ms = projection_labels(j);
  const int d = static_cast<int>(ms.size());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) s(a, b) = metric_spherical(j, ms[a], ms[b]);
  return s;
}

struct Checker {
  std::ostringstream os;
  int total = 0;
  int failed = 0;

  void add(const std::string& name, double residual, double limit) {
    ++total;
    const bool pass = std::isfinite(residual) && residual <= limit;
    if (!pass) ++failed;
    os << (pass ? "[ok]   " : "[FAIL] ") << pad(name, 38) << "residual "
       << pad(format_number(residual), 14) << "limit " << format_number(limit)
       << "\n";
  }
};

std::vector<HalfInt> j_values(HalfInt j_max) {
  std::vector<HalfInt> out;
  for (int tj = 0; tj <= j_max.twice(); ++tj) out.push_back(HalfInt::from_twice(tj));
  return out;
}

// Block-diagonal action of element s on reduction-table columns: column
// (a, Gamma, gamma) maps to sum_{gamma'} D_Gamma(s)(gamma', gamma) times
// column (a, Gamma, gamma').
Eigen::MatrixXcd column_action(const Scheme& scheme, const ReductionTable& t,
                               int element) {
  const int n = t.dim();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const StateLabel& label = t.labels[col];
    const Eigen::MatrixXcd& rep = scheme.irrep(label.irrep).matrix(element);
    for (int gp = 1; gp <= scheme.irrep(label.irrep).dim; ++gp) {
      int row = t.column(label.irrep, label.a, gp);
      d(row, col) = rep(gp - 1, label.gamma - 1);
    }
  }
  return d;
}

}  // namespace

SelfCheckReport run_selfcheck(const Scheme& scheme,
                              const SelfCheckOptions& options) {
  const DoubleGroup& g = scheme.group();
  const CharacterTable& t = scheme.table();
  const double tol = options.tolerance;
  const int n = g.order();
  const int nr = t.num_irreps();
  const auto js = j_values(options.j_max);

  Checker c;
  c.os << "selfcheck group=" << g.name << " order=" << n << " classes="
       << g.num_classes() << " irreps=" << nr << " j_max="
       << options.j_max.str() << " samples=" << options.samples << " seed="
       << options.seed << " tol=" << format_number(tol) << "\n";

  // --- character table ---
  {
    int dim_sum = 0;
    for (int d : t.dims) dim_sum += d * d;
    c.add("irrep-dimension-sum", std::abs(dim_sum - n), 0.0);

    Eigen::VectorXd weights(t.num_classes());
    for (int cls = 0; cls < t.num_classes(); ++cls)
      weights(cls) = static_cast<double>(t.class_sizes[cls]) / n;
    Eigen::MatrixXcd gram =
        t.chi * weights.asDiagonal() * t.chi.adjoint() -
        Eigen::MatrixXcd::Identity(nr, nr);
    c.add("character-orthonormality", max_abs(gram), tol);
  }

  // --- canonical irrep matrices ---
  {
    double unitarity = 0.0, homomorphism = 0.0, trace = 0.0;
    for (int r = 0; r < nr; ++r) {
      const Irrep& rep = scheme.irrep(r);
      const Eigen::MatrixXcd id =
          Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
      for (int e = 0; e < n; ++e) {
        unitarity = std::max(
            unitarity, max_abs(rep.matrix(e).adjoint() * rep.matrix(e) - id));
        trace = std::max(trace, std::abs(rep.matrix(e).trace() -
                                         t.chi(r, g.class_of[e])));
        // Products against generators reach every element, so this covers
        // the full multiplication table.
        for (int s : g.generator_indices)
          homomorphism = std::max(
              homomorphism, max_abs(rep.matrix(s) * rep.matrix(e) -
                                    rep.matrix(g.mult[s][e])));
      }
    }
    c.add("irrep-unitarity", unitarity, tol);
    c.add("irrep-homomorphism", homomorphism, tol);
    c.add("irrep-trace-consistency", trace, tol);

    int cols = 0;
    for (int d : t.dims) cols += d * d;
    Eigen::MatrixXcd v(n, cols);
    int col = 0;
    for (int r = 0; r < nr; ++r) {
      const Irrep& rep = scheme.irrep(r);
      const double scale = std::sqrt(static_cast<double>(rep.dim) / n);
      for (int i = 0; i < rep.dim; ++i)
        for (int jj = 0; jj < rep.dim; ++jj, ++col)
          for (int e = 0; e < n; ++e) v(e, col) = scale * rep.matrix(e)(i, jj);
    }
    c.add("great-orthogonality",
          max_abs(v.adjoint() * v -
                  Eigen::MatrixXcd::Identity(cols, cols)),
          tol);
  }

  // --- coupling tables ---
  {
    double dim_sum = 0.0, unitarity = 0.0, intertwine = 0.0;
    for (int r1 = 0; r1 < nr; ++r1)
      for (int r2 = 0; r2 < nr; ++r2) {
        const auto mult = kron_decompose(t, r1, r2);
        int total = 0;
        for (int r = 0; r < nr; ++r) total += mult[r] * t.dims[r];
        dim_sum = std::max(dim_sum,
                           std::abs(double(total - t.dims[r1] * t.dims[r2])));

        const auto& copies = scheme.coupling(r1, r2);
        const int d12 = t.dims[r1] * t.dims[r2];
        Eigen::MatrixXcd stacked(d12, d12);
        int col = 0;
        for (const auto& copy : copies) {
          stacked.middleCols(col, copy.coeff.cols()) = copy.coeff;
          col += static_cast<int>(copy.coeff.cols());
        }
        unitarity = std::max(
            unitarity, max_abs(stacked.adjoint() * stacked -
                               Eigen::MatrixXcd::Identity(d12, d12)));
        for (const auto& copy : copies)
          for (int s : g.generator_indices)
            intertwine = std::max(
                intertwine,
                max_abs(kron(scheme.irrep(r1).matrix(s),
                             scheme.irrep(r2).matrix(s)) *
                            copy.coeff -
                        copy.coeff * scheme.irrep(copy.irrep).matrix(s)));
      }
    c.add("kron-dimension-sum", dim_sum, 0.0);
    c.add("coupling-unitarity", unitarity, tol);
    c.add("coupling-intertwining", intertwine, tol);
  }

  // --- branching and reduction tables ---
  {
    double sum_rule = 0.0, element_sum = 0.0, unitarity = 0.0,
           equivariance = 0.0;
    for (HalfInt j : js) {
      const BranchingRule& rule = scheme.branching(j);
      int total = 0;
      for (int r = 0; r < nr; ++r) total += rule.multiplicity[r] * t.dims[r];
      sum_rule =
          std::max(sum_rule, std::abs(double(total - (j.twice() + 1))));

      // Independent multiplicity route: average the full element sum of
      // conj(chi_r) times the rotation-matrix trace.
      const auto& rot = scheme.restriction(j);
      for (int r = 0; r < nr; ++r) {
        Complex acc = 0.0;
        for (int e = 0; e < n; ++e)
          acc += std::conj(t.chi(r, g.class_of[e])) * rot[e].trace();
        acc /= static_cast<double>(n);
        element_sum = std::max(
            element_sum, std::abs(acc - Complex(rule.multiplicity[r], 0.0)));
      }

      const ReductionTable& red = scheme.reduction(j);
      unitarity = std::max(
          unitarity,
          max_abs(red.coeffs.adjoint() * red.coeffs -
                  Eigen::MatrixXcd::Identity(red.dim(), red.dim())));
      for (int s : g.generator_indices)
        equivariance = std::max(
            equivariance, max_abs(rot[s] * red.coeffs -
                                  red.coeffs * column_action(scheme, red, s)));
    }
    c.add("branching-sum-rule", sum_rule, 0.0);
    c.add("branching-element-sum", element_sum, tol);
    c.add("reduction-unitarity", unitarity, tol);
    c.add("reduction-equivariance", equivariance, tol);
  }

  // --- metrics ---
  SymbolStore store(scheme);
  {
    double spherical = 0.0, unitarity = 0.0, graded = 0.0, involution = 0.0,
           slice = 0.0;
    for (HalfInt j : js) {
      const double sign = (j.twice() % 2 == 0) ? 1.0 : -1.0;
      const int d = j.twice() + 1;
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

      Eigen::MatrixXcd s = spherical_metric_matrix(j);
      spherical = std::max(spherical, max_abs(s * s.conjugate() - sign * id));
      spherical = std::max(spherical, max_abs(s.transpose() - sign * s));

      Eigen::MatrixXcd m = store.two_j_matrix(j);
      unitarity = std::max(unitarity, max_abs(m.adjoint() * m - id));
      graded = std::max(graded, max_abs(m.transpose() - sign * m));
      involution =
          std::max(involution, max_abs(m * m.conjugate() - sign * id));
      slice = std::max(slice, max_abs(m - store.two_j_matrix_from_coupling(j)));
    }
    c.add("spherical-metric-involution", spherical, tol);
    c.add("adapted-metric-unitarity", unitarity, tol);
    c.add("adapted-metric-graded-symmetry", graded, tol);
    c.add("adapted-metric-conjugate-involution", involution, tol);
    c.add("metric-coupling-slice-agreement", slice, tol);
  }

  // --- tensor matrix elements, two routes ---
  {
    std::mt19937 rng(options.seed);
    std::uniform_int_distribution<int> tj_dist(0, options.j_max.twice());
    std::normal_distribution<double> amp(0.0, 1.0);
    double route = 0.0;
    for (int sample = 0; sample < options.samples; ++sample) {
      const HalfInt j1 = HalfInt::from_twice(tj_dist(rng));
      const HalfInt j2 = HalfInt::from_twice(tj_dist(rng));
      const int tk_min = std::abs(j1.twice() - j2.twice());
      const int tk_max =
          std::min(j1.twice() + j2.twice(), 2 * options.j_max.twice());
      const int steps = (tk_max - tk_min) / 2 + 1;
      std::uniform_int_distribution<int> tk_dist(0, steps - 1);
      const HalfInt k = HalfInt::from_twice(tk_min + 2 * tk_dist(rng));

      const auto& l1 = scheme.reduction(j1).labels;
      const auto& l2 = scheme.reduction(j2).labels;
      const auto& lk = scheme.reduction(k).labels;
      std::uniform_int_distribution<int> i1(0, static_cast<int>(l1.size()) - 1);
      std::uniform_int_distribution<int> i2(0, static_cast<int>(l2.size()) - 1);
      std::uniform_int_distribution<int> ik(0, static_cast<int>(lk.size()) - 1);
      const Complex reduced(amp(rng), amp(rng));

      const StateLabel c1 = l1[i1(rng)];
      const StateLabel ck = lk[ik(rng)];
      const StateLabel c2 = l2[i2(rng)];
      route = std::max(route,
                       std::abs(store.wigner_eckart(c1, ck, c2, reduced) -
                                store.wigner_eckart_f(c1, ck, c2, reduced)));
    }
    c.add("tensor-element-route-agreement", route, tol);
  }

  // --- scalar coupling closed form ---
  {
    double closed = 0.0;
    for (HalfInt j : js) {
      const SymbolTable& table = store.f_table(j, j, HalfInt(0));
      const double expected = 1.0 / std::sqrt(j.twice() + 1.0);
      for (int a = 0; a < table.n1(); ++a)
        for (int b = 0; b < table.n2(); ++b) {
          const Complex want = (a == b) ? Complex(expected, 0.0) : Complex(0.0);
          closed = std::max(closed, std::abs(table.value(a, b, 0) - want));
        }
    }
    c.add("scalar-coupling-closed-form", closed, 1e-12);
  }

  // --- invariant tensor components are diagonal and partner-independent ---
  {
    double invariant = 0.0;
    for (HalfInt j : js)
      for (int k = 1; k <= options.j_max.twice(); ++k) {
        if (k > j.twice()) break;  // triangle for (j, j, k)
        const BranchingRule& rule = scheme.branching(HalfInt(k));
        if (rule.multiplicity[0] == 0) continue;  // no invariant component
        const SymbolTable& table = store.f_table(j, j, HalfInt(k));
        for (int a0 = 1; a0 <= rule.multiplicity[0]; ++a0) {
          const int ik = static_cast<int>(a0 - 1);  // trivial irrep comes first
          for (int a = 0; a < table.n1(); ++a)
            for (int b = 0; b < table.n2(); ++b) {
              const StateLabel& la = table.labels1[a];
              const StateLabel& lb = table.labels2[b];
              const Complex v = table.value(a, b, ik);
              if (la.irrep != lb.irrep || la.gamma != lb.gamma) {
                invariant = std::max(invariant, std::abs(v));
              } else if (la.gamma > 1) {
                // Must match the gamma=1 entry of the same (a1, a2, irrep).
                StateLabel ref_a = la, ref_b = lb;
                ref_a.gamma = ref_b.gamma = 1;
                int ia = -1, ib = -1;
                for (int x = 0; x < table.n1(); ++x)
                  if (table.labels1[x] == ref_a) ia = x;
                for (int x = 0; x < table.n2(); ++x)
                  if (table.labels2[x] == ref_b) ib = x;
                invariant = std::max(invariant,
                                     std::abs(v - table.value(ia, ib, ik)));
              }
            }
        }
      }
    c.add("invariant-component-diagonality", invariant, tol);
  }

  // --- isoscalar reconstruction ---
  {
    double residual = 0.0;
    for (HalfInt j1 : js)
      for (HalfInt j2 : js)
        for (int k = 1; k <= 2; ++k) {
          if (j1 > HalfInt(2) || j2 > HalfInt(2)) continue;
          if (!triangle(j1, j2, HalfInt(k))) continue;
          if (!(j1 + j2).is_integer()) continue;  // k integral
          IsoscalarSet set = store.isoscalar_factors(j1, j2, HalfInt(k), false);
          residual = std::max(residual, set.max_residual);
        }
    c.add("isoscalar-reconstruction", residual, tol);
  }

  SelfCheckReport report;
  report.total = c.total;
  report.failed = c.failed;
  report.ok = c.failed == 0;
  if (report.ok)
    c.os << "result: ok (" << c.total << " checks)\n";
  else
    c.os << "result: FAIL (" << c.failed << "/" << c.total
         << " checks failed)\n";
  report.text = c.os.str();
  return report;
}

}  // namespace wracah
