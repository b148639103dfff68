#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wracah/error.hpp"
#include "wracah/su2.hpp"

using wracah::Complex;
using wracah::HalfInt;
using wracah::SU2Element;

namespace {

// Deterministic random rotations used across the rotation-matrix checks.
std::vector<SU2Element> random_rotations(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 4.0 * M_PI);
  std::normal_distribution<double> axis(0.0, 1.0);
  std::vector<SU2Element> out;
  for (int i = 0; i < count; ++i)
    out.push_back(wracah::su2_rotation(angle(rng), axis(rng), axis(rng),
                                       axis(rng)));
  return out;
}

}  // namespace

TEST_CASE("rotation generators are special unitary") {
  for (const auto& g : random_rotations(25, 11)) {
    CHECK(wracah::is_su2(g));
    CHECK(std::abs(g.determinant() - Complex(1, 0)) < 1e-12);
    CHECK((g * g.adjoint() - SU2Element::Identity()).norm() < 1e-12);
  }
  SU2Element bad;
  bad << 2, 0, 0, 0.5;
  CHECK_FALSE(wracah::is_su2(bad));
  CHECK_THROWS_WITH_AS(wracah::require_su2(bad),
                       doctest::Contains("unit determinant"), wracah::Error);
}

TEST_CASE("z-rotations and explicit axis rotations agree") {
  for (double angle : {0.0, 0.7, M_PI, 2.5 * M_PI}) {
    CHECK((wracah::su2_rotation_z(angle) -
           wracah::su2_rotation(angle, 0, 0, 1)).norm() < 1e-14);
  }
  // Axis normalization is internal: scaling the axis changes nothing.
  CHECK((wracah::su2_rotation(1.3, 2, -4, 6) -
         wracah::su2_rotation(1.3, 1, -2, 3)).norm() < 1e-14);
  // Full turn is -identity, double turn the identity.
  CHECK((wracah::su2_rotation(2 * M_PI, 0, 1, 0) +
         SU2Element::Identity()).norm() < 1e-12);
  CHECK((wracah::su2_rotation(4 * M_PI, 0, 1, 0) -
         SU2Element::Identity()).norm() < 1e-12);
}

TEST_CASE("projection labels run from +j to -j") {
  const auto labels = wracah::projection_labels(HalfInt::from_twice(3));
  REQUIRE(labels.size() == 4);
  CHECK(labels.front() == HalfInt::from_twice(3));
  CHECK(labels.back() == HalfInt::from_twice(-3));
  for (std::size_t i = 0; i + 1 < labels.size(); ++i)
    CHECK((labels[i] - labels[i + 1]).twice() == 2);
  CHECK(wracah::projection_index(HalfInt(2), HalfInt(2)) == 0);
  CHECK(wracah::projection_index(HalfInt(2), HalfInt(-2)) == 4);
}

TEST_CASE("rotation matrices match the eigendecomposition route") {
  // The library expands rotation matrices as polynomials in the SU(2)
  // entries; the oracle exponentiates the angular-momentum generator. Both
  // must produce the same unitary, for integral and half-integral j.
  for (const auto& g : random_rotations(12, 29)) {
    for (int twice_j : {0, 1, 2, 3, 4, 5, 8}) {
      const HalfInt j = HalfInt::from_twice(twice_j);
      const auto lib = wracah::wigner_d(j, g);
      const auto ref = oracle::rotation_matrix(j, g);
      CAPTURE(twice_j);
      CHECK((lib - ref).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("rotation matrices form a representation") {
  const auto gs = random_rotations(6, 37);
  const HalfInt j = HalfInt::from_twice(3);
  for (const auto& a : gs)
    for (const auto& b : gs) {
      const Eigen::MatrixXcd lhs = wracah::wigner_d(j, a) * wracah::wigner_d(j, b);
      const Eigen::MatrixXcd rhs = wracah::wigner_d(j, SU2Element(a * b));
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("spin one half representation is the defining one") {
  for (const auto& g : random_rotations(10, 43)) {
    const auto d = wracah::wigner_d(HalfInt::from_twice(1), g);
    CHECK((d - g).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("z-rotations act diagonally with descending phases") {
  const double alpha = 0.83;
  const auto d = wracah::wigner_d(HalfInt(1), wracah::su2_rotation_z(alpha));
  for (int r = 0; r < 3; ++r) {
    const double m = 1.0 - r;
    CHECK(std::abs(d(r, r) - std::exp(Complex(0, -m * alpha))) < 1e-12);
    for (int c = 0; c < 3; ++c)
      if (c != r) CHECK(std::abs(d(r, c)) < 1e-12);
  }
}

TEST_CASE("coupling symbols match the ladder-operator construction") {
  double worst = 0;
  for (int t1 = 0; t1 <= 6; ++t1)
    for (int t2 = 0; t2 <= 6; ++t2)
      for (int t3 = std::abs(t1 - t2); t3 <= t1 + t2; t3 += 2)
        for (int tm1 = -t1; tm1 <= t1; tm1 += 2)
          for (int tm2 = -t2; tm2 <= t2; tm2 += 2) {
            const int tm3 = -tm1 - tm2;
            if (std::abs(tm3) > t3) continue;
            const auto j1 = HalfInt::from_twice(t1);
            const auto j2 = HalfInt::from_twice(t2);
            const auto j3 = HalfInt::from_twice(t3);
            const auto m1 = HalfInt::from_twice(tm1);
            const auto m2 = HalfInt::from_twice(tm2);
            const auto m3 = HalfInt::from_twice(tm3);
            worst = std::max(worst,
                             std::abs(wracah::three_jm(j1, j2, j3, m1, m2, m3) -
                                      oracle::three_jm(j1, j2, j3, m1, m2, m3)));
          }
  CHECK(worst < 1e-12);
}

TEST_CASE("coupling symbols match independently tabulated values") {
  // Values frozen from an independent computer-algebra evaluation.
  struct Spot {
    int tj1, tj2, tj3, tm1, tm2, tm3;
    double want;
  };
  const Spot spots[] = {
      {2, 2, 0, 2, -2, 0, 0.57735026918962576},
      {3, 3, 2, 1, 1, -2, 0.36514837167011074},
      {4, 8, 4, -2, 4, -2, 0.25197631533948482},
      {5, 6, 3, 1, -4, 3, -0.26726124191242438},
      {8, 8, 8, 4, -6, 2, -0.062329799333897145},
  };
  for (const auto& s : spots) {
    const double got = wracah::three_jm(
        HalfInt::from_twice(s.tj1), HalfInt::from_twice(s.tj2),
        HalfInt::from_twice(s.tj3), HalfInt::from_twice(s.tm1),
        HalfInt::from_twice(s.tm2), HalfInt::from_twice(s.tm3));
    CHECK(got == doctest::Approx(s.want).epsilon(1e-12));
  }
}

TEST_CASE("coupling symbol selection rules and label validation") {
  const HalfInt one(1), zero(0);
  // Magnetic sum and triangle violations give exact zero.
  CHECK(wracah::three_jm(one, one, one, one, zero, zero) == 0.0);
  CHECK(wracah::three_jm(one, one, HalfInt(3), one, zero, -one) == 0.0);
  // Malformed labels throw instead of silently returning zero.
  CHECK_THROWS_AS(wracah::three_jm(one, one, one, HalfInt(2), -one, -one),
                  wracah::Error);
  CHECK_THROWS_AS(wracah::three_jm(HalfInt::from_twice(1), one, one,
                                   HalfInt(0), one, -one),
                  wracah::Error);
}

TEST_CASE("coupling symbol orthogonality") {
  // sum_{m1 m2} (2j3+1) 3jm(j1 j2 j3; m1 m2 m3) 3jm(j1 j2 j3'; m1 m2 m3')
  //   = delta(j3 j3') delta(m3 m3')
  const HalfInt j1 = HalfInt::from_twice(3), j2 = HalfInt(1);
  for (int t3 = 1; t3 <= 5; t3 += 2)
    for (int t3p = 1; t3p <= 5; t3p += 2) {
      const HalfInt j3 = HalfInt::from_twice(t3);
      const HalfInt j3p = HalfInt::from_twice(t3p);
      for (HalfInt m3 : wracah::projection_labels(j3)) {
        if (wracah::abs(m3) > j3p) continue;
        double acc = 0;
        for (HalfInt m1 : wracah::projection_labels(j1))
          for (HalfInt m2 : wracah::projection_labels(j2)) {
            if ((m1 + m2 + m3).twice() != 0) continue;
            acc += (j3.twice() + 1) *
                   wracah::three_jm(j1, j2, j3, m1, m2, m3) *
                   wracah::three_jm(j1, j2, j3p, m1, m2, m3);
          }
        const double want = (t3 == t3p) ? 1.0 : 0.0;
        CHECK(std::abs(acc - want) < 1e-12);
      }
    }
}

TEST_CASE("spherical metric is a graded involution") {
  for (int tj : {0, 1, 2, 3, 4, 7}) {
    const HalfInt j = HalfInt::from_twice(tj);
    const auto ms = wracah::projection_labels(j);
    const int n = static_cast<int>(ms.size());
    Eigen::MatrixXd metric(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        metric(a, b) = wracah::metric_spherical(j, ms[a], ms[b]);
    const double sign = (tj % 2 == 0) ? 1.0 : -1.0;
    CHECK((metric * metric - sign * Eigen::MatrixXd::Identity(n, n)).norm() <
          1e-14);
    CHECK((metric.transpose() - sign * metric).norm() < 1e-14);
    // Each row holds exactly one unit entry, at the opposite projection.
    for (int a = 0; a < n; ++a) {
      CHECK(std::abs(metric(a, n - 1 - a)) == doctest::Approx(1.0));
      CHECK(metric.row(a).cwiseAbs().sum() == doctest::Approx(1.0));
    }
  }
}
