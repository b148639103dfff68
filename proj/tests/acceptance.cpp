// Acceptance gate: one line per criterion, [PASS] or [FAIL], then a summary.
// argv[1] must point at the command-line binary (used by the determinism
// criterion); all other criteria exercise the library directly against
// independent oracles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "wracah/crystal_field.hpp"
#include "wracah/scheme.hpp"
#include "wracah/symbols.hpp"

using wracah::Complex;
using wracah::HalfInt;
using wracah::StateLabel;

namespace {

struct Gate {
  int passed = 0, failed = 0;

  void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    (ok ? passed : failed) += 1;
  }
};

std::vector<const wracah::Scheme*> presets() {
  static wracah::Scheme oct = wracah::Scheme::from_preset("O*");
  static wracah::Scheme tet = wracah::Scheme::from_preset("D4*");
  static wracah::Scheme tri = wracah::Scheme::from_preset("D3*");
  return {&oct, &tet, &tri};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
bool group_engine(std::string& detail) {
  const std::array<int, 3> orders = {48, 16, 12};
  const std::array<int, 3> classes = {8, 7, 6};
  double worst = 0;
  int i = 0;
  for (const auto* scheme : presets()) {
    const auto& g = scheme->group();
    const auto& t = scheme->table();
    if (g.order() != orders[i] || g.num_classes() != classes[i]) {
      detail = g.name + ": order " + std::to_string(g.order()) + ", classes " +
               std::to_string(g.num_classes());
      return false;
    }
    if (t.num_irreps() != classes[i]) {
      detail = g.name + ": irrep count " + std::to_string(t.num_irreps());
      return false;
    }
    int dim_sum = 0;
    for (int d : t.dims) dim_sum += d * d;
    if (dim_sum != g.order()) {
      detail = g.name + ": sum of squared dims " + std::to_string(dim_sum);
      return false;
    }
    for (int r = 0; r < t.num_irreps(); ++r)
      for (int s = 0; s < t.num_irreps(); ++s) {
        Complex acc(0, 0);
        for (int c = 0; c < t.num_classes(); ++c)
          acc += static_cast<double>(t.class_sizes[c]) * t.chi(r, c) *
                 std::conj(t.chi(s, c));
        acc /= static_cast<double>(g.order());
        worst = std::max(worst, std::abs(acc - (r == s ? 1.0 : 0.0)));
      }
    ++i;
  }
  detail = "orders 48/16/12, row orthogonality " + fmt(worst);
  return worst <= 1e-10;
}

// ---------------------------------------------------------------- criterion 2
bool branching_rules(std::string& detail) {
  for (const auto* scheme : presets()) {
    const auto& dims = scheme->table().dims;
    for (int tj = 0; tj <= 12; ++tj) {
      const HalfInt j = HalfInt::from_twice(tj);
      const auto& mult = scheme->branching(j).multiplicity;
      int total = 0;
      for (std::size_t r = 0; r < mult.size(); ++r) total += mult[r] * dims[r];
      if (total != tj + 1) {
        detail = scheme->group().name + " j=" + j.str() + ": dimension sum " +
                 std::to_string(total);
        return false;
      }
      if (mult != oracle::branching_by_characters(*scheme, j)) {
        detail = scheme->group().name + " j=" + j.str() +
                 ": disagrees with the character-sum oracle";
        return false;
      }
    }
  }
  const auto& oct = *presets()[0];
  const auto& t = oct.table();
  const auto spot = [&](HalfInt j, const char* alias) {
    return oct.branching(j).multiplicity[t.find(alias)];
  };
  if (spot(HalfInt(2), "E") != 1 || spot(HalfInt(2), "T2") != 1 ||
      spot(HalfInt::from_twice(1), "E1/2") != 1) {
    detail = "octahedral spot multiplicities are off";
    return false;
  }
  detail = "all j <= 6 on O*/D4*/D3*, spots m(2,E)=m(2,T2)=m(1/2,E1/2)=1";
  return true;
}

// ---------------------------------------------------------------- criterion 3
bool reduction_tables(std::string& detail) {
  double worst_unitary = 0, worst_schur = 0;
  for (const auto* scheme : presets()) {
    const auto& g = scheme->group();
    for (int tj = 0; tj <= 12; ++tj) {
      const HalfInt j = HalfInt::from_twice(tj);
      const auto& table = scheme->reduction(j);
      const int n = tj + 1;
      worst_unitary = std::max(
          worst_unitary, (table.coeffs.adjoint() * table.coeffs -
                          Eigen::MatrixXcd::Identity(n, n)).norm());

      const auto& restriction = scheme->restriction(j);
      for (int e = 0; e < g.order(); ++e) {
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
        int col = 0;
        while (col < n) {
          const auto& d = scheme->irrep(table.labels[col].irrep).matrix(e);
          block.block(col, col, d.rows(), d.cols()) = d;
          col += static_cast<int>(d.rows());
        }
        worst_schur =
            std::max(worst_schur, (restriction[e] * table.coeffs -
                                   table.coeffs * block).norm());
      }
    }
  }
  detail = "unitarity " + fmt(worst_unitary) + ", intertwining " +
           fmt(worst_schur);
  return worst_unitary <= 1e-10 && worst_schur <= 1e-10;
}

// ---------------------------------------------------------------- criterion 4
bool symbol_identities(std::string& detail) {
  double worst_metric = 0, worst_routes = 0, worst_scalar = 0;
  for (const auto* scheme : presets()) {
    wracah::SymbolStore store(*scheme);

    // Metric route vs scalar-slice route, all j <= 4.
    for (int tj = 0; tj <= 8; ++tj) {
      const HalfInt j = HalfInt::from_twice(tj);
      worst_metric = std::max(
          worst_metric, (store.two_j_matrix(j) -
                         store.two_j_matrix_from_coupling(j))
                            .cwiseAbs().maxCoeff());
    }

    // Both tensor-theorem routes on random label tuples.
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    int sampled = 0;
    while (sampled < 200) {
      std::uniform_int_distribution<int> tj(0, 6);
      const HalfInt j1 = HalfInt::from_twice(tj(rng));
      const HalfInt j2 = HalfInt::from_twice(tj(rng));
      if (!j1.same_parity(j2)) continue;
      const int lo = std::abs(j1.twice() - j2.twice());
      const int hi = std::min(j1.twice() + j2.twice(), 8);
      if (hi < lo) continue;
      std::uniform_int_distribution<int> tk(0, (hi - lo) / 2);
      const HalfInt k = HalfInt::from_twice(lo + 2 * tk(rng));
      auto pick = [&](HalfInt j) {
        const auto& labels = scheme->reduction(j).labels;
        std::uniform_int_distribution<int> idx(
            0, static_cast<int>(labels.size()) - 1);
        return labels[idx(rng)];
      };
      const StateLabel c1 = pick(j1), c2 = pick(j2), ck = pick(k);
      const Complex reduced(amp(rng), amp(rng));
      worst_routes = std::max(
          worst_routes, std::abs(store.wigner_eckart(c1, ck, c2, reduced) -
                                 store.wigner_eckart_f(c1, ck, c2, reduced)));
      ++sampled;
    }

    // Scalar rank closed form f(j j 0) = delta / sqrt(2j+1).
    for (int tj = 0; tj <= 8; ++tj) {
      const auto& table =
          store.f_table(HalfInt::from_twice(tj), HalfInt::from_twice(tj),
                        HalfInt(0));
      const double want = 1.0 / std::sqrt(tj + 1.0);
      for (int a = 0; a < table.n1(); ++a)
        for (int b = 0; b < table.n2(); ++b)
          worst_scalar = std::max(
              worst_scalar, std::abs(table.value(a, b, 0) -
                                     (a == b ? Complex(want, 0) : Complex())));
    }
  }
  detail = "metric/slice " + fmt(worst_metric) + ", routes (200/group) " +
           fmt(worst_routes) + ", scalar form " + fmt(worst_scalar);
  return worst_metric <= 1e-10 && worst_routes <= 1e-10 &&
         worst_scalar <= 1e-12;
}

// ---------------------------------------------------------------- criterion 5
struct ChannelKey {
  int a2, r2, ak, rk, a1, r1;
  auto operator<=>(const ChannelKey&) const = default;
};

bool racah_factorization(std::string& detail) {
  double worst_rebuild = 0, worst_slices = 0;
  bool saw_double_channel = false;

  for (const auto* scheme : presets()) {
    wracah::SymbolStore store(*scheme);
    const auto& dims = scheme->table().dims;

    for (int t1 = 0; t1 <= 6; ++t1)
      for (int t2 = 0; t2 <= 6; ++t2)
        for (int tk = std::abs(t1 - t2); tk <= std::min(t1 + t2, 8); tk += 2) {
          const HalfInt j1 = HalfInt::from_twice(t1);
          const HalfInt j2 = HalfInt::from_twice(t2);
          const HalfInt k = HalfInt::from_twice(tk);
          const auto set = store.isoscalar_factors(j1, j2, k);
          worst_rebuild = std::max(worst_rebuild, set.max_residual);

          // Elementwise rebuild from the published factors.
          std::map<ChannelKey, std::map<int, Complex>> channel;
          for (const auto& f : set.factors)
            channel[{f.a2, f.irrep2, f.ak, f.irrepk, f.a1, f.irrep1}]
                   [f.beta] = f.value;
          const auto& ft = store.f_table(j1, j2, k);
          const double scale =
              (k.twice() % 2 == 0 ? 1.0 : -1.0) / std::sqrt(t1 + 1.0);
          for (int i1 = 0; i1 < ft.n1(); ++i1)
            for (int i2 = 0; i2 < ft.n2(); ++i2)
              for (int ik = 0; ik < ft.n3(); ++ik) {
                const StateLabel &c1 = ft.labels1[i1], &c2 = ft.labels2[i2],
                                 &ck = ft.labels3[ik];
                Complex rebuilt(0, 0);
                auto it = channel.find(
                    {c2.a, c2.irrep, ck.a, ck.irrep, c1.a, c1.irrep});
                if (it != channel.end())
                  for (const auto& cg :
                       scheme->coupling(c2.irrep, ck.irrep)) {
                    if (cg.irrep != c1.irrep) continue;
                    auto b = it->second.find(cg.beta);
                    if (b == it->second.end()) continue;
                    rebuilt += b->second * scale *
                               cg.coeff((c2.gamma - 1) * dims[ck.irrep] +
                                            (ck.gamma - 1),
                                        c1.gamma - 1);
                  }
                worst_rebuild = std::max(
                    worst_rebuild,
                    std::abs(rebuilt - std::conj(ft.value(i1, i2, ik))));
              }

          // Partner-slice independence: solve each gamma1 slice alone and
          // compare against the published factors.
          std::map<ChannelKey, bool> seen;
          for (int i1 = 0; i1 < ft.n1(); ++i1) {
            const StateLabel& c1 = ft.labels1[i1];
            for (int i2 = 0; i2 < ft.n2(); ++i2)
              for (int ik = 0; ik < ft.n3(); ++ik) {
                const StateLabel &c2 = ft.labels2[i2], &ck = ft.labels3[ik];
                const ChannelKey key{c2.a, c2.irrep, ck.a,
                                     ck.irrep, c1.a, c1.irrep};
                if (seen[key]) continue;
                seen[key] = true;
                std::vector<const wracah::GroupCG*> copies;
                for (const auto& cg : scheme->coupling(c2.irrep, ck.irrep))
                  if (cg.irrep == c1.irrep) copies.push_back(&cg);
                if (copies.empty()) continue;
                if (copies.size() >= 2 && scheme->group().name == "O*")
                  saw_double_channel = true;

                const int d1 = dims[c1.irrep], d2 = dims[c2.irrep],
                          dk = dims[ck.irrep];
                const int nb = static_cast<int>(copies.size());
                const auto it = channel.find(key);
                for (int g1 = 0; g1 < d1; ++g1) {
                  Eigen::MatrixXcd design(d2 * dk, nb);
                  Eigen::VectorXcd rhs(d2 * dk);
                  for (int g2 = 0; g2 < d2; ++g2)
                    for (int gk = 0; gk < dk; ++gk) {
                      const int row = g2 * dk + gk;
                      for (int b = 0; b < nb; ++b)
                        design(row, b) =
                            scale * copies[b]->coeff(row, g1);
                      rhs(row) = std::conj(store.f(
                          StateLabel{j1, c1.a, c1.irrep, g1 + 1},
                          StateLabel{j2, c2.a, c2.irrep, g2 + 1},
                          StateLabel{k, ck.a, ck.irrep, gk + 1}));
                    }
                  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
                      design, Eigen::ComputeThinU | Eigen::ComputeThinV);
                  if (svd.singularValues().minCoeff() < 1e-8) continue;
                  const Eigen::VectorXcd sol = svd.solve(rhs);
                  for (int b = 0; b < nb; ++b) {
                    Complex published(0, 0);
                    if (it != channel.end()) {
                      auto f = it->second.find(copies[b]->beta);
                      if (f != it->second.end()) published = f->second;
                    }
                    worst_slices = std::max(worst_slices,
                                            std::abs(sol(b) - published));
                  }
                }
              }
          }
        }
  }
  detail = "rebuild " + fmt(worst_rebuild) + ", slice spread " +
           fmt(worst_slices) +
           (saw_double_channel ? ", doubled channel covered"
                               : ", NO doubled channel seen");
  return worst_rebuild <= 1e-10 && worst_slices <= 1e-10 &&
         saw_double_channel;
}

// ---------------------------------------------------------------- criterion 6
bool crystal_field(std::string& detail) {
  const auto& oct = *presets()[0];
  const auto& tet = *presets()[1];

  const auto cubic = wracah::CrystalFieldParams::octahedral(1.0);
  const auto adapted = wracah::cf_matrix_adapted(cubic, 2, oct);
  if (adapted.off_block_norm > 1e-10) {
    detail = "cubic off-block norm " + fmt(adapted.off_block_norm);
    return false;
  }
  const auto levels = wracah::level_scheme(adapted);
  if (levels.levels.size() != 2 || levels.levels[0].degeneracy != 3 ||
      levels.levels[1].degeneracy != 2) {
    detail = "cubic level pattern is not 3+2";
    return false;
  }
  const double ratio_defect = std::abs(6.0 * levels.levels[0].energy +
                                       4.0 * levels.levels[1].energy);
  if (ratio_defect > 1e-8) {
    detail = "cubic -4:6 ratio defect " + fmt(ratio_defect);
    return false;
  }

  const auto tetra = wracah::CrystalFieldParams::tetragonal(0.3, 1.0, 0.5);
  const auto tetra_adapted = wracah::cf_matrix_adapted(tetra, 2, tet);
  const auto tetra_levels = wracah::level_scheme(tetra_adapted);
  std::multiset<int> pattern;
  for (const auto& level : tetra_levels.levels)
    pattern.insert(level.degeneracy);
  if (pattern != std::multiset<int>{1, 1, 1, 2}) {
    detail = "tetragonal level pattern is not 1+1+1+2";
    return false;
  }

  double worst_spectra = 0;
  for (const auto& [params, scheme] :
       {std::pair{cubic, &oct}, std::pair{tetra, &tet}}) {
    const auto spherical = wracah::cf_matrix_spherical(params, 2);
    const auto built = wracah::cf_matrix_adapted(params, 2, *scheme);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(spherical.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> b(built.matrix);
    worst_spectra = std::max(
        worst_spectra,
        (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff());
  }
  detail = "patterns 3+2 and 1+1+1+2, ratio defect " + fmt(ratio_defect) +
           ", spectra agreement " + fmt(worst_spectra);
  return worst_spectra <= 1e-10;
}

// ---------------------------------------------------------------- criterion 7
bool cli_determinism(const char* cli, std::string& detail) {
  if (cli == nullptr) {
    detail = "no command-line binary path was supplied";
    return false;
  }
  const std::string base = "/tmp/wracah-acceptance-selfcheck";
  auto run = [&](const std::string& out) {
    const std::string cmd =
        std::string("\"") + cli + "\" selfcheck --group O* > " + out + " 2>&1";
    return std::system(cmd.c_str());
  };
  const int status1 = run(base + "-1.txt");
  const int status2 = run(base + "-2.txt");
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string first = slurp(base + "-1.txt");
  const std::string second = slurp(base + "-2.txt");
  std::remove((base + "-1.txt").c_str());
  std::remove((base + "-2.txt").c_str());
  if (status1 != 0 || status2 != 0) {
    detail = "selfcheck exited nonzero";
    return false;
  }
  if (first.empty() || first != second) {
    detail = "reports differ between consecutive runs";
    return false;
  }
  detail = "two runs, " + std::to_string(first.size()) +
           " bytes each, byte-identical";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  Gate gate;
  std::string detail;

  detail.clear();
  gate.report(group_engine(detail),
              "group engine: orders, class/irrep counts, dimension sums, "
              "character orthogonality", detail);
  detail.clear();
  gate.report(branching_rules(detail),
              "branching: dimension sum rule and character-sum oracle, "
              "j <= 6, with octahedral spot values", detail);
  detail.clear();
  gate.report(reduction_tables(detail),
              "reduction tables: unitarity and intertwining for j <= 6 on "
              "all presets", detail);
  detail.clear();
  gate.report(symbol_identities(detail),
              "symbol identities: metric vs scalar slice, both "
              "tensor-theorem routes, scalar closed form", detail);
  detail.clear();
  gate.report(racah_factorization(detail),
              "factorization: elementwise rebuild, doubled channel, "
              "partner-slice independence", detail);
  detail.clear();
  gate.report(crystal_field(detail),
              "crystal field: cubic 3+2 with -4:6 ratio, tetragonal "
              "1+1+1+2, spherical vs adapted spectra", detail);
  detail.clear();
  gate.report(cli_determinism(cli, detail),
              "determinism: consecutive command-line selfcheck reports are "
              "byte-identical", detail);

  if (gate.failed == 0) {
    std::printf("all criteria passed (%d/%d)\n", gate.passed,
                gate.passed + gate.failed);
    return 0;
  }
  std::printf("%d of %d criteria failed\n", gate.failed,
              gate.passed + gate.failed);
  return 1;
}
