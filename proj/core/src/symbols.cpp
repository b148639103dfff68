#include "wracah/symbols.hpp"

#include <cmath>

#include "wracah/error.hpp"

namespace wracah {

namespace {

int label_index(const std::vector<StateLabel>& labels, const StateLabel& c) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == c) return static_cast<int>(i);
  fail(Errc::invalid_label, "adapted label not present in the j=" +
                                (labels.empty() ? std::string("?")
                                                : labels[0].j.str()) +
                                " reduction table");
}

}  // namespace

const SymbolTable& SymbolStore::table(
    std::map<std::tuple<int, int, int>, std::unique_ptr<SymbolTable>>& cache,
    HalfInt j1, HalfInt j2, HalfInt j3, bool is_f) {
  std::scoped_lock lock(mutex_);
  auto& slot = cache[{j1.twice(), j2.twice(), j3.twice()}];
  if (slot) return *slot;

  const ReductionTable& t1 = scheme_.reduction(j1);
  const ReductionTable& t2 = scheme_.reduction(j2);
  const ReductionTable& t3 = scheme_.reduction(j3);
  const auto m1s = projection_labels(j1);
  const auto m2s = projection_labels(j2);
  const auto m3s = projection_labels(j3);
  const int n1 = t1.dim(), n2 = t2.dim(), n3 = t3.dim();

  auto out = std::make_unique<SymbolTable>();
  out->j1 = j1;
  out->j2 = j2;
  out->j3 = j3;
  out->labels1 = t1.labels;
  out->labels2 = t2.labels;
  out->labels3 = t3.labels;
  out->values.assign(static_cast<std::size_t>(n1) * n2 * n3, Complex(0, 0));

  if (is_f) {
    // f(j1 j2 k): sum over (m1, q, m2) of (-1)^(j1-m1) 3jm(j1 k j2; -m1 q m2)
    // times conj(U1(m1,c1)) U3(q,ck) U2(m2,c2); here j3 plays k. For each q
    // the (m1, m2) contraction is one small matrix product.
    for (int qi = 0; qi < n3; ++qi) {
      HalfInt q = m3s[qi];
      Eigen::MatrixXcd slice(static_cast<int>(m1s.size()),
                             static_cast<int>(m2s.size()));
      for (std::size_t a = 0; a < m1s.size(); ++a)
        for (std::size_t b = 0; b < m2s.size(); ++b)
          slice(static_cast<int>(a), static_cast<int>(b)) =
              static_cast<double>(parity(j1 - m1s[a])) *
              three_jm(j1, j3, j2, -m1s[a], q, m2s[b]);
      Eigen::MatrixXcd contracted = t1.coeffs.adjoint() * slice * t2.coeffs;
      for (int c1 = 0; c1 < n1; ++c1)
        for (int c2 = 0; c2 < n2; ++c2)
          for (int ck = 0; ck < n3; ++ck)
            out->values[(static_cast<std::size_t>(c1) * n2 + c2) * n3 + ck] +=
                t3.coeffs(qi, ck) * contracted(c1, c2);
    }
  } else {
    // Symmetrized 3-symbol: plain 3-jm against three conjugated tables.
    for (int mi = 0; mi < static_cast<int>(m3s.size()); ++mi) {
      HalfInt m3 = m3s[mi];
      Eigen::MatrixXcd slice(static_cast<int>(m1s.size()),
                             static_cast<int>(m2s.size()));
      for (std::size_t a = 0; a < m1s.size(); ++a)
        for (std::size_t b = 0; b < m2s.size(); ++b)
          slice(static_cast<int>(a), static_cast<int>(b)) =
              three_jm(j1, j2, j3, m1s[a], m2s[b], m3);
      Eigen::MatrixXcd contracted =
          t1.coeffs.adjoint() * slice * t2.coeffs.conjugate();
      for (int c1 = 0; c1 < n1; ++c1)
        for (int c2 = 0; c2 < n2; ++c2)
          for (int c3 = 0; c3 < n3; ++c3)
            out->values[(static_cast<std::size_t>(c1) * n2 + c2) * n3 + c3] +=
                std::conj(t3.coeffs(mi, c3)) * contracted(c1, c2);
    }
  }

  slot = std::move(out);
  return *slot;
}

const SymbolTable& SymbolStore::f_table(HalfInt j1, HalfInt j2, HalfInt k) {
  return table(f_, j1, j2, k, true);
}

const SymbolTable& SymbolStore::fbar_table(HalfInt j1, HalfInt j2, HalfInt j3) {
  return table(fbar_, j1, j2, j3, false);
}

Complex SymbolStore::f(const StateLabel& c1, const StateLabel& c2,
                       const StateLabel& ck) {
  const SymbolTable& t = f_table(c1.j, c2.j, ck.j);
  return t.value(label_index(t.labels1, c1), label_index(t.labels2, c2),
                 label_index(t.labels3, ck));
}

Complex SymbolStore::fbar(const StateLabel& c1, const StateLabel& c2,
                          const StateLabel& c3) {
  const SymbolTable& t = fbar_table(c1.j, c2.j, c3.j);
  return t.value(label_index(t.labels1, c1), label_index(t.labels2, c2),
                 label_index(t.labels3, c3));
}

Eigen::MatrixXcd SymbolStore::two_j_matrix(HalfInt j) {
  const ReductionTable& t = scheme_.reduction(j);
  const auto ms = projection_labels(j);
  const int n = t.dim();
  Eigen::MatrixXd metric = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      metric(a, b) = metric_spherical(j, ms[a], ms[b]);
  return t.coeffs.adjoint() * metric * t.coeffs.conjugate();
}

Eigen::MatrixXcd SymbolStore::two_j_matrix_from_coupling(HalfInt j) {
  const SymbolTable& t = fbar_table(j, HalfInt(0), j);
  const int n = t.n1();
  Eigen::MatrixXcd out(n, n);
  double scale = std::sqrt(static_cast<double>(j.twice() + 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = scale * t.value(a, 0, b);
  return out;
}

Complex SymbolStore::two_j(const StateLabel& c1, const StateLabel& c2) {
  if (c1.j != c2.j)
    fail(Errc::invalid_label, "adapted metric requires equal j on both labels");
  const ReductionTable& t = scheme_.reduction(c1.j);
  Eigen::MatrixXcd m = two_j_matrix(c1.j);
  return m(label_index(t.labels, c1), label_index(t.labels, c2));
}

Complex SymbolStore::wigner_eckart(const StateLabel& c1, const StateLabel& ck,
                                   const StateLabel& c2, Complex reduced) {
  const ReductionTable& t1 = scheme_.reduction(c1.j);
  const SymbolTable& sym = fbar_table(c1.j, ck.j, c2.j);
  Eigen::MatrixXcd metric = two_j_matrix(c1.j);
  const int i1 = label_index(t1.labels, c1);
  const int ik = label_index(sym.labels2, ck);
  const int i2 = label_index(sym.labels3, c2);
  Complex acc(0, 0);
  for (int i3 = 0; i3 < t1.dim(); ++i3)
    acc += metric(i3, i1) * std::conj(sym.value(i3, ik, i2));
  return reduced * acc;
}

Complex SymbolStore::wigner_eckart_f(const StateLabel& c1,
                                     const StateLabel& ck,
                                     const StateLabel& c2, Complex reduced) {
  return reduced * f(c1, c2, ck);
}

IsoscalarSet SymbolStore::isoscalar_factors(HalfInt j1, HalfInt j2, HalfInt k,
                                            bool strict) {
  const SymbolTable& ft = f_table(j1, j2, k);
  const CharacterTable& table = scheme_.table();

  IsoscalarSet out;
  out.j1 = j1;
  out.j2 = j2;
  out.k = k;

  const double scale = (k.twice() % 2 == 0 ? 1.0 : -1.0) /
                       std::sqrt(static_cast<double>(j1.twice() + 1));

  // Channels are (a1 Gamma1) x (a2 Gamma2) x (ak Gammak) blocks; every
  // channel is an independent least-squares problem over its gamma triples.
  const auto& rule1 = scheme_.branching(j1).multiplicity;
  const auto& rule2 = scheme_.branching(j2).multiplicity;
  const auto& rulek = scheme_.branching(k).multiplicity;

  for (int r1 = 0; r1 < table.num_irreps(); ++r1)
    for (int a1 = 1; a1 <= rule1[r1]; ++a1)
      for (int r2 = 0; r2 < table.num_irreps(); ++r2)
        for (int a2 = 1; a2 <= rule2[r2]; ++a2)
          for (int rk = 0; rk < table.num_irreps(); ++rk)
            for (int ak = 1; ak <= rulek[rk]; ++ak) {
              const int d1 = table.dims[r1], d2 = table.dims[r2],
                        dk = table.dims[rk];

              std::vector<int> i1(d1), i2(d2), ik(dk);
              for (int g = 0; g < d1; ++g)
                i1[g] = label_index(ft.labels1, StateLabel{j1, a1, r1, g + 1});
              for (int g = 0; g < d2; ++g)
                i2[g] = label_index(ft.labels2, StateLabel{j2, a2, r2, g + 1});
              for (int g = 0; g < dk; ++g)
                ik[g] = label_index(ft.labels3, StateLabel{k, ak, rk, g + 1});

              // Copies of Gamma1 inside Gamma2 (x) Gammak.
              std::vector<const GroupCG*> copies;
              for (const auto& cg : scheme_.coupling(r2, rk))
                if (cg.irrep == r1) copies.push_back(&cg);

              const int rows = d1 * d2 * dk;
              Eigen::VectorXcd rhs(rows);
              for (int g1 = 0; g1 < d1; ++g1)
                for (int g2 = 0; g2 < d2; ++g2)
                  for (int gk = 0; gk < dk; ++gk)
                    rhs((g1 * d2 + g2) * dk + gk) =
                        std::conj(ft.value(i1[g1], i2[g2], ik[gk]));

              if (copies.empty()) {
                // Selection rule: without a coupled copy the f block vanishes.
                double worst = rhs.cwiseAbs().maxCoeff();
                out.max_residual = std::max(out.max_residual, worst);
                continue;
              }

              Eigen::MatrixXcd design(rows, static_cast<int>(copies.size()));
              for (std::size_t b = 0; b < copies.size(); ++b)
                for (int g1 = 0; g1 < d1; ++g1)
                  for (int g2 = 0; g2 < d2; ++g2)
                    for (int gk = 0; gk < dk; ++gk)
                      design((g1 * d2 + g2) * dk + gk,
                             static_cast<int>(b)) =
                          scale * copies[b]->coeff(g2 * dk + gk, g1);

              Eigen::VectorXcd solution =
                  design.colPivHouseholderQr().solve(rhs);
              double residual =
                  (design * solution - rhs).cwiseAbs().maxCoeff();
              out.max_residual = std::max(out.max_residual, residual);

              for (std::size_t b = 0; b < copies.size(); ++b) {
                IsoscalarFactor factor;
                factor.j2 = j2;
                factor.k = k;
                factor.j1 = j1;
                factor.a2 = a2;
                factor.irrep2 = r2;
                factor.ak = ak;
                factor.irrepk = rk;
                factor.a1 = a1;
                factor.irrep1 = r1;
                factor.beta = copies[b]->beta;
                factor.value = solution(static_cast<int>(b));
                out.factors.push_back(factor);
              }
            }

  if (strict && out.max_residual > scheme_.tolerance())
    fail(Errc::convention_mismatch,
         "isoscalar reconstruction residual " +
             std::to_string(out.max_residual) +
             " exceeds the tolerance; coupling and reduction conventions "
             "disagree");
  return out;
}

}  // namespace wracah
