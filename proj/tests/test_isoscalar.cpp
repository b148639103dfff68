#include <cmath>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "wracah/symbols.hpp"

using wracah::Complex;
using wracah::GroupCG;
using wracah::HalfInt;
using wracah::IsoscalarFactor;
using wracah::IsoscalarSet;
using wracah::StateLabel;
using wracah::SymbolStore;

namespace {

struct ChannelKey {
  int a2, r2, ak, rk, a1, r1;
  auto operator<=>(const ChannelKey&) const = default;
};

// Independent reconstruction: every f value must equal the channel's
// factors contracted with the group coupling coefficients,
//   conj(f(c1 c2 ck)) = s / sqrt(2j1+1) * sum_beta iso_beta <G2 g2 Gk gk | beta G1 g1>
// with s = -1 for half-odd rank. Returns the worst elementwise deviation.
double reconstruction_error(const wracah::Scheme& scheme, SymbolStore& store,
                            HalfInt j1, HalfInt j2, HalfInt k,
                            const IsoscalarSet& set) {
  const auto& ft = store.f_table(j1, j2, k);
  const auto& dims = scheme.table().dims;

  std::map<ChannelKey, std::map<int, Complex>> channel;  // beta -> value
  for (const IsoscalarFactor& f : set.factors)
    channel[{f.a2, f.irrep2, f.ak, f.irrepk, f.a1, f.irrep1}][f.beta] = f.value;

  const double scale =
      (k.twice() % 2 == 0 ? 1.0 : -1.0) / std::sqrt(j1.twice() + 1.0);
  double worst = 0;
  for (int i1 = 0; i1 < ft.n1(); ++i1)
    for (int i2 = 0; i2 < ft.n2(); ++i2)
      for (int ik = 0; ik < ft.n3(); ++ik) {
        const StateLabel& c1 = ft.labels1[i1];
        const StateLabel& c2 = ft.labels2[i2];
        const StateLabel& ck = ft.labels3[ik];
        Complex rebuilt(0, 0);
        const auto it = channel.find(
            {c2.a, c2.irrep, ck.a, ck.irrep, c1.a, c1.irrep});
        if (it != channel.end()) {
          const int dk = dims[ck.irrep];
          for (const GroupCG& cg : scheme.coupling(c2.irrep, ck.irrep)) {
            if (cg.irrep != c1.irrep) continue;
            const auto beta = it->second.find(cg.beta);
            if (beta == it->second.end()) continue;
            rebuilt += beta->second * scale *
                       cg.coeff((c2.gamma - 1) * dk + (ck.gamma - 1),
                                c1.gamma - 1);
          }
        }
        worst = std::max(worst,
                         std::abs(rebuilt - std::conj(ft.value(i1, i2, ik))));
      }
  return worst;
}

}  // namespace

TEST_CASE("factorization reconstructs every coupling value") {
  for (const auto* scheme : fixtures::standard_presets()) {
    SymbolStore store(*scheme);
    CAPTURE(scheme->group().name);
    double worst = 0;
    for (int t1 = 0; t1 <= 6; ++t1)
      for (int t2 = 0; t2 <= 6; ++t2)
        for (int tk = std::abs(t1 - t2); tk <= std::min(t1 + t2, 8); tk += 2) {
          const HalfInt j1 = HalfInt::from_twice(t1);
          const HalfInt j2 = HalfInt::from_twice(t2);
          const HalfInt k = HalfInt::from_twice(tk);
          const IsoscalarSet set = store.isoscalar_factors(j1, j2, k);
          CHECK(set.max_residual < 1e-10);
          worst = std::max(
              worst, reconstruction_error(*scheme, store, j1, j2, k, set));
        }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("doubly occurring product channels carry two independent factors") {
  // j1 = j2 = 3/2 and rank 1 in the octahedral scheme: the quartet couples
  // to the three-fold irrep twice, so one channel has two factors.
  SymbolStore store(fixtures::octahedral());
  const auto& scheme = fixtures::octahedral();
  const HalfInt j32 = HalfInt::from_twice(3);
  const IsoscalarSet set = store.isoscalar_factors(j32, j32, HalfInt(1));
  CHECK(set.max_residual < 1e-10);

  const int g32 = scheme.irrep_index("G3/2");
  const int t1 = scheme.irrep_index("T1");
  std::vector<const IsoscalarFactor*> doubled;
  for (const auto& f : set.factors)
    if (f.irrep1 == g32 && f.irrep2 == g32 && f.irrepk == t1)
      doubled.push_back(&f);
  REQUIRE(doubled.size() == 2);
  CHECK(doubled[0]->beta == 1);
  CHECK(doubled[1]->beta == 2);
  // Deterministic values for the two copies.
  CHECK(std::abs(doubled[0]->value - Complex(0.948683298051, 0)) < 1e-10);
  CHECK(std::abs(doubled[1]->value - Complex(-0.316227766017, 0)) < 1e-10);
  // Reconstruction with both factors is elementwise exact.
  CHECK(reconstruction_error(scheme, store, j32, j32, HalfInt(1), set) <
        1e-10);
}

TEST_CASE("factors are the same for every partner slice") {
  // Racah's lemma: extracting the factor from any single gamma1 slice gives
  // the same value. Solve each slice independently and compare.
  const auto& scheme = fixtures::octahedral();
  SymbolStore store(scheme);
  const auto& dims = scheme.table().dims;

  for (const auto [t1, t2, tk] :
       {std::array{4, 4, 4}, std::array{3, 3, 2}, std::array{2, 4, 4},
        std::array{3, 5, 4}}) {
    const HalfInt j1 = HalfInt::from_twice(t1);
    const HalfInt j2 = HalfInt::from_twice(t2);
    const HalfInt k = HalfInt::from_twice(tk);
    const auto& ft = store.f_table(j1, j2, k);
    const double scale =
        (k.twice() % 2 == 0 ? 1.0 : -1.0) / std::sqrt(j1.twice() + 1.0);

    // Group f labels by channel.
    std::map<ChannelKey, bool> seen;
    for (int i1 = 0; i1 < ft.n1(); ++i1)
      for (int i2 = 0; i2 < ft.n2(); ++i2)
        for (int ik = 0; ik < ft.n3(); ++ik) {
          const StateLabel& c1 = ft.labels1[i1];
          const StateLabel& c2 = ft.labels2[i2];
          const StateLabel& ck = ft.labels3[ik];
          const ChannelKey key{c2.a, c2.irrep, ck.a, ck.irrep, c1.a, c1.irrep};
          if (seen[key]) continue;
          seen[key] = true;

          std::vector<const GroupCG*> copies;
          for (const auto& cg : scheme.coupling(c2.irrep, ck.irrep))
            if (cg.irrep == c1.irrep) copies.push_back(&cg);
          if (copies.empty()) continue;

          const int d1 = dims[c1.irrep], d2 = dims[c2.irrep],
                    dk = dims[ck.irrep];
          const int nb = static_cast<int>(copies.size());

          Eigen::MatrixXcd slice_solutions(nb, d1);
          bool all_slices_ok = true;
          for (int g1 = 0; g1 < d1; ++g1) {
            Eigen::MatrixXcd design(d2 * dk, nb);
            Eigen::VectorXcd rhs(d2 * dk);
            for (int g2 = 0; g2 < d2; ++g2)
              for (int gk = 0; gk < dk; ++gk) {
                const int row = g2 * dk + gk;
                for (int b = 0; b < nb; ++b)
                  design(row, b) = scale * copies[b]->coeff(row, g1);
                rhs(row) = std::conj(store.f(
                    StateLabel{j1, c1.a, c1.irrep, g1 + 1},
                    StateLabel{j2, c2.a, c2.irrep, g2 + 1},
                    StateLabel{k, ck.a, ck.irrep, gk + 1}));
              }
            // A slice can be rank-deficient only if the coupling vanishes
            // on it; every copy of a unitary coupling has full columns
            // somewhere, and for these groups each slice is solvable.
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
                design, Eigen::ComputeThinU | Eigen::ComputeThinV);
            if (svd.singularValues().minCoeff() < 1e-8) {
              all_slices_ok = false;
              break;
            }
            slice_solutions.col(g1) = svd.solve(rhs);
          }
          if (!all_slices_ok) continue;
          for (int g1 = 1; g1 < d1; ++g1)
            CHECK((slice_solutions.col(g1) - slice_solutions.col(0))
                      .cwiseAbs().maxCoeff() < 1e-10);
        }
  }
}

TEST_CASE("strict extraction flags inconsistent channels") {
  // With strict=true the solver validates its own residual; on consistent
  // input it must not throw and lenient mode must agree.
  SymbolStore store(fixtures::trigonal());
  const HalfInt two(2);
  const IsoscalarSet strict = store.isoscalar_factors(two, two, two, true);
  const IsoscalarSet lenient = store.isoscalar_factors(two, two, two, false);
  REQUIRE(strict.factors.size() == lenient.factors.size());
  for (std::size_t i = 0; i < strict.factors.size(); ++i)
    CHECK(std::abs(strict.factors[i].value - lenient.factors[i].value) <
          1e-12);
}
