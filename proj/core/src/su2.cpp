#include "wracah/su2.hpp"

#include <array>
#include <cmath>

#include "wracah/error.hpp"

namespace wracah {

namespace {

constexpr int kFactorialTableSize = 512;

const std::array<double, kFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> t{};
    t[0] = 0.0;
    for (int n = 1; n < kFactorialTableSize; ++n)
      t[n] = t[n - 1] + std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

void require_momentum_pair(HalfInt j, HalfInt m, const char* what) {
  if (j.twice() < 0)
    fail(Errc::invalid_label, std::string(what) + ": negative j=" + j.str());
  if (!j.same_parity(m))
    fail(Errc::invalid_label, std::string(what) + ": j=" + j.str() + ", m=" +
                                  m.str() + " differ by a half-odd step");
  if (abs(m) > j)
    fail(Errc::invalid_label,
         std::string(what) + ": |m|>j for j=" + j.str() + ", m=" + m.str());
}

}  // namespace

double log_factorial(int n) {
  if (n < 0 || n >= kFactorialTableSize)
    fail(Errc::invalid_label,
         "factorial argument out of range: " + std::to_string(n));
  return log_factorial_table()[n];
}

bool is_su2(const SU2Element& g, double tol) {
  if (!g.allFinite()) return false;
  double unitary = (g.adjoint() * g - SU2Element::Identity()).cwiseAbs().maxCoeff();
  double det = std::abs(g.determinant() - Complex(1.0, 0.0));
  return unitary <= tol && det <= tol;
}

void require_su2(const SU2Element& g, double tol) {
  if (!is_su2(g, tol))
    fail(Errc::invalid_element,
         "matrix is not unitary with unit determinant within tolerance");
}

SU2Element su2_rotation(double angle, double nx, double ny, double nz) {
  double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(norm > 0.0) || !std::isfinite(norm))
    fail(Errc::invalid_element, "rotation axis must be a nonzero vector");
  nx /= norm;
  ny /= norm;
  nz /= norm;
  double c = std::cos(0.5 * angle);
  double s = std::sin(0.5 * angle);
  SU2Element g;
  g(0, 0) = Complex(c, -s * nz);
  g(0, 1) = Complex(-s * ny, -s * nx);
  g(1, 0) = Complex(s * ny, -s * nx);
  g(1, 1) = Complex(c, s * nz);
  return g;
}

SU2Element su2_rotation_z(double angle) { return su2_rotation(angle, 0, 0, 1); }

std::vector<HalfInt> projection_labels(HalfInt j) {
  std::vector<HalfInt> out;
  out.reserve(j.twice() + 1);
  for (int tm = j.twice(); tm >= -j.twice(); tm -= 2)
    out.push_back(HalfInt::from_twice(tm));
  return out;
}

int projection_index(HalfInt j, HalfInt m) {
  require_momentum_pair(j, m, "projection_index");
  return (j.twice() - m.twice()) / 2;
}

Eigen::MatrixXcd wigner_d(HalfInt j, const SU2Element& g, double tol) {
  if (j.twice() < 0) fail(Errc::invalid_label, "negative j=" + j.str());
  require_su2(g, tol);

  const int tj = j.twice();
  const int n = tj + 1;
  const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);

  // Powers up to 2j of each entry; exact zeros stay exact.
  auto powers = [tj](Complex z) {
    std::vector<Complex> p(tj + 1);
    p[0] = Complex(1.0, 0.0);
    for (int e = 1; e <= tj; ++e) p[e] = p[e - 1] * z;
    return p;
  };
  const auto pa = powers(a), pb = powers(b), pc = powers(c), pd = powers(d);

  Eigen::MatrixXcd out(n, n);
  for (int row = 0; row < n; ++row) {
    const int jpm1 = tj - row;  // j + m' as an integer
    const int jmm1 = row;       // j - m'
    for (int col = 0; col < n; ++col) {
      const int jpm = tj - col;  // j + m
      const int jmm = col;       // j - m
      const double prefactor =
          0.5 * (log_factorial(jpm1) + log_factorial(jmm1) -
                 log_factorial(jpm) - log_factorial(jmm));
      Complex sum(0.0, 0.0);
      const int kmin = std::max(0, jpm - jpm1);  // b exponent k-(jpm-jpm1) >= 0
      const int kmax = std::min(jpm, jmm1);
      for (int k = kmin; k <= kmax; ++k) {
        const double w = std::exp(prefactor + log_binomial(jpm, k) +
                                  log_binomial(jmm, jmm1 - k));
        sum += w * pa[jpm - k] * pc[k] * pb[k - (jpm - jpm1)] * pd[jmm1 - k];
      }
      out(row, col) = sum;
    }
  }
  return out;
}

double three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2,
                HalfInt m3) {
  require_momentum_pair(j1, m1, "three_jm");
  require_momentum_pair(j2, m2, "three_jm");
  require_momentum_pair(j3, m3, "three_jm");

  if (!(j1 + j2 + j3).is_integer()) return 0.0;
  if ((m1 + m2 + m3).twice() != 0) return 0.0;
  if (!triangle(j1, j2, j3)) return 0.0;

  // Integer combinations entering the single-sum formula.
  const int a1 = as_int(j1 + j2 - j3);
  const int a2 = as_int(j1 - j2 + j3);
  const int a3 = as_int(-j1 + j2 + j3);
  const int b1 = as_int(j1 - m1), b2 = as_int(j1 + m1);
  const int b3 = as_int(j2 - m2), b4 = as_int(j2 + m2);
  const int b5 = as_int(j3 - m3), b6 = as_int(j3 + m3);

  const double log_norm =
      0.5 * (log_factorial(a1) + log_factorial(a2) + log_factorial(a3) -
             log_factorial(as_int(j1 + j2 + j3) + 1) + log_factorial(b1) +
             log_factorial(b2) + log_factorial(b3) + log_factorial(b4) +
             log_factorial(b5) + log_factorial(b6));

  const int kmin = std::max({0, as_int(j2 - j3 - m1), as_int(j1 - j3 + m2)});
  const int kmax = std::min({a1, b1, b4});

  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_term =
        log_norm - log_factorial(k) - log_factorial(a1 - k) -
        log_factorial(b1 - k) - log_factorial(b4 - k) -
        log_factorial(as_int(j3 - j2 + m1) + k) -
        log_factorial(as_int(j3 - j1 - m2) + k);
    const double term = std::exp(log_term);
    sum += (k % 2 == 0 ? term : -term);
  }
  const int phase = parity(j1 - j2 - m3);
  return phase * sum;
}

double metric_spherical(HalfInt j, HalfInt m1, HalfInt m2) {
  require_momentum_pair(j, m1, "metric_spherical");
  require_momentum_pair(j, m2, "metric_spherical");
  if (m2 != -m1) return 0.0;
  return static_cast<double>(parity(j + m1));
}

}  // namespace wracah
