#include "wracah/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "wracah/error.hpp"

namespace wracah {

namespace {

// Character of D^j on an SU(2) element with the given trace (a class function
// of the rotation angle alone).
double restriction_character(HalfInt j, Complex trace) {
  double x = std::clamp(std::real(trace) / 2.0, -1.0, 1.0);
  double half = std::acos(x);  // theta/2 in [0, pi]
  double s = std::sin(half);
  int n = j.twice() + 1;  // 2j+1
  if (s < 1e-9) {
    // theta ~ 0 (trace +2) or theta ~ 2pi (trace -2, the -identity sheet)
    double val = static_cast<double>(n);
    return x > 0 ? val : (j.is_integer() ? val : -val);
  }
  return std::sin(n * half) / s;
}

// Multiplicity of irrep r in the restriction of D^j, from characters only.
int restriction_multiplicity(const DoubleGroup& group, const CharacterTable& t,
                             HalfInt j, int r) {
  Complex acc(0, 0);
  for (int c = 0; c < t.num_classes(); ++c) {
    Complex trace = group.elements[group.classes[c][0]].trace();
    acc += static_cast<double>(t.class_sizes[c]) *
           restriction_character(j, trace) * std::conj(t.chi(r, c));
  }
  double m = std::real(acc) / t.group_order;
  long rounded = std::lround(m);
  if (std::abs(m - rounded) > 1e-6 || std::abs(std::imag(acc)) > 1e-6)
    fail(Errc::inconsistent_table,
         "restriction multiplicity is not an integer");
  return static_cast<int>(rounded);
}

// First j (scanning 0, 1/2, 1, ...) whose restriction contains irrep r.
HalfInt first_occurrence(const DoubleGroup& group, const CharacterTable& t,
                         int r, int max_twice = 16) {
  for (int tj = 0; tj <= max_twice; ++tj) {
    HalfInt j = HalfInt::from_twice(tj);
    if (restriction_multiplicity(group, t, j, r) > 0) return j;
  }
  return HalfInt::from_twice(-1);
}

bool near(Complex z, double x, double tol = 1e-6) {
  return std::abs(z - Complex(x, 0)) < tol;
}

// Conventional display names where the usual rules identify them uniquely;
// canonical labels otherwise.
std::vector<std::string> display_aliases(const DoubleGroup& group,
                                         const CharacterTable& t) {
  const int nr = t.num_irreps();
  std::vector<std::string> alias(t.labels);

  int principal_class = -1, secondary_class = -1;
  if (!group.generator_indices.empty())
    principal_class = group.class_of[group.generator_indices[0]];
  if (group.generator_indices.size() > 1)
    secondary_class = group.class_of[group.generator_indices[1]];

  std::vector<int> vector_one_dims;
  for (int r = 0; r < nr; ++r)
    if (t.dims[r] == 1 && !t.spinor[r]) vector_one_dims.push_back(r);

  for (int r = 0; r < nr; ++r) {
    const int d = t.dims[r];
    if (!t.spinor[r]) {
      if (d == 1) {
        bool trivial = true;
        for (int c = 0; c < t.num_classes(); ++c)
          trivial = trivial && near(t.chi(r, c), 1.0);
        if (trivial) {
          alias[r] = "A1";
        } else if (vector_one_dims.size() == 2) {
          alias[r] = "A2";
        } else if (vector_one_dims.size() == 4 && principal_class >= 0 &&
                   secondary_class >= 0) {
          if (near(t.chi(r, principal_class), 1.0))
            alias[r] = "A2";
          else if (near(t.chi(r, principal_class), -1.0))
            alias[r] = near(t.chi(r, secondary_class), 1.0) ? "B1" : "B2";
        }
      } else if (d == 2) {
        int count = 0;
        for (int s = 0; s < nr; ++s)
          if (t.dims[s] == 2 && !t.spinor[s]) ++count;
        if (count == 1) alias[r] = "E";
      } else if (d == 3) {
        HalfInt j = first_occurrence(group, t, r);
        if (j == HalfInt(1)) alias[r] = "T1";
        if (j == HalfInt(2)) alias[r] = "T2";
      }
    } else {
      if (d == 2) {
        HalfInt j = first_occurrence(group, t, r);
        if (j.twice() == 1) alias[r] = "E1/2";
        if (j.twice() == 3) alias[r] = "E3/2";
        if (j.twice() == 5) alias[r] = "E5/2";
      } else if (d == 4) {
        int count = 0;
        for (int s = 0; s < nr; ++s)
          if (t.dims[s] == 4 && t.spinor[s]) ++count;
        if (count == 1) alias[r] = "G3/2";
      } else if (d == 1) {
        // Complex-conjugate pair of one-dimensional spinor irreps, split by
        // the sign of the first nonreal character.
        int partners = 0;
        for (int s = 0; s < nr; ++s)
          if (t.dims[s] == 1 && t.spinor[s]) ++partners;
        if (partners == 2) {
          for (int c = 0; c < t.num_classes(); ++c) {
            double im = std::imag(t.chi(r, c));
            if (std::abs(im) > 1e-6) {
              alias[r] = im > 0 ? "1E3/2" : "2E3/2";
              break;
            }
          }
        }
      }
    }
  }

  // Any name assigned twice reverts to the canonical labels.
  for (int r = 0; r < nr; ++r)
    for (int s = r + 1; s < nr; ++s)
      if (alias[r] == alias[s] && alias[r] != t.labels[r]) {
        alias[r] = t.labels[r];
        alias[s] = t.labels[s];
      }
  return alias;
}

}  // namespace

int CharacterTable::find(const std::string& name) const {
  for (int r = 0; r < num_irreps(); ++r)
    if (labels[r] == name || aliases[r] == name) return r;
  return -1;
}

int CharacterTable::conjugate_irrep(int irrep, double tol) const {
  for (int s = 0; s < num_irreps(); ++s) {
    double worst = 0.0;
    for (int c = 0; c < num_classes(); ++c)
      worst = std::max(worst, std::abs(chi(s, c) - std::conj(chi(irrep, c))));
    if (worst <= std::max(tol, 1e-8)) return s;
  }
  fail(Errc::inconsistent_table,
       "no conjugate partner found for irrep " + labels[irrep]);
}

CharacterTable character_table(const DoubleGroup& group, double tol,
                               unsigned seed) {
  const int n = group.order();
  const int r = group.num_classes();

  // Class-multiplication structure constants: C_i C_j = sum_k a_ijk C_k.
  std::vector<Eigen::MatrixXd> class_matrix(r, Eigen::MatrixXd::Zero(r, r));
  {
    std::vector<std::vector<std::vector<long>>> count(
        r, std::vector<std::vector<long>>(r, std::vector<long>(r, 0)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int a : group.classes[i])
          for (int b : group.classes[j]) ++count[i][j][group.class_of[group.mult[a][b]]];
    // count[i][j][k] = |C_k| * a_ijk; the central-character vector omega obeys
    // sum_k a_ijk omega_k = omega_i omega_j, i.e. it is a right eigenvector of
    // the matrix with (row, col) = (j, k).
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
          long c = count[i][j][k];
          long size = group.class_size(k);
          if (c % size != 0)
            fail(Errc::inconsistent_table,
                 "class multiplication constants are not integral");
          class_matrix[i](j, k) = static_cast<double>(c / size);
        }
  }

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coeff(0.25, 1.0);

  Eigen::MatrixXcd omega;  // central characters, one column per irrep
  std::vector<int> dims;
  bool done = false;
  std::string last_failure = "eigenvalue separation failed";

  for (int attempt = 0; attempt < 32 && !done; ++attempt) {
    Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i) combined += coeff(rng) * class_matrix[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(combined);
    if (solver.info() != Eigen::Success) continue;

    // Require clear separation: distinct irreps give distinct eigenvalues of
    // a generic combination; near-collisions make eigenvectors unreliable.
    Eigen::VectorXcd ev = solver.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    bool separated = true;
    for (int i = 0; i < r && separated; ++i)
      for (int j = i + 1; j < r; ++j)
        if (std::abs(ev(i) - ev(j)) < 1e-6 * scale) {
          separated = false;
          break;
        }
    if (!separated) continue;

    Eigen::MatrixXcd vec = solver.eigenvectors();
    omega.resize(r, r);
    dims.assign(r, 0);
    bool good = true;
    for (int col = 0; col < r && good; ++col) {
      Complex head = vec(0, col);  // identity-class component, nonzero
      if (std::abs(head) < 1e-12 * vec.col(col).norm()) {
        good = false;
        last_failure = "vanishing identity component in a class eigenvector";
        break;
      }
      Eigen::VectorXcd w = vec.col(col) / head;
      double inv = 0.0;
      for (int c = 0; c < r; ++c)
        inv += std::norm(w(c)) / group.class_size(c);
      double dim = std::sqrt(static_cast<double>(n) / inv);
      long rounded = std::lround(dim);
      if (rounded < 1 || std::abs(dim - rounded) > 1e-6) {
        good = false;
        last_failure = "irrep dimension did not round to an integer";
        break;
      }
      dims[col] = static_cast<int>(rounded);
      omega.col(col) = w;
    }
    if (!good) continue;

    if (std::accumulate(dims.begin(), dims.end(), 0, [](int acc, int d) {
          return acc + d * d;
        }) != n) {
      last_failure = "squared dimensions do not add up to the group order";
      continue;
    }
    done = true;
  }
  if (!done)
    fail(Errc::numerical_degeneracy,
         "character extraction failed after 32 random class-sum "
         "combinations: " + last_failure);

  // Characters from central characters, then canonical row order.
  Eigen::MatrixXcd chi(r, r);
  for (int col = 0; col < r; ++col)
    for (int c = 0; c < r; ++c)
      chi(col, c) = static_cast<double>(dims[col]) * omega(c, col) /
                    static_cast<double>(group.class_size(c));

  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  auto is_trivial = [&](int row) {
    for (int c = 0; c < r; ++c)
      if (std::abs(chi(row, c) - Complex(1, 0)) > 1e-6) return false;
    return true;
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    bool tx = is_trivial(x), ty = is_trivial(y);
    if (tx != ty) return tx;
    if (dims[x] != dims[y]) return dims[x] < dims[y];
    for (int c = 1; c < r; ++c) {
      double dre = std::real(chi(x, c)) - std::real(chi(y, c));
      if (std::abs(dre) > 1e-9) return dre > 0;
      double dim_part = std::imag(chi(x, c)) - std::imag(chi(y, c));
      if (std::abs(dim_part) > 1e-9) return dim_part > 0;
    }
    return false;
  });

  CharacterTable table;
  table.chi.resize(r, r);
  table.dims.resize(r);
  table.group_order = n;
  table.minus_identity_class = group.minus_identity_class();
  table.class_sizes.resize(r);
  for (int c = 0; c < r; ++c) table.class_sizes[c] = group.class_size(c);
  for (int row = 0; row < r; ++row) {
    table.chi.row(row) = chi.row(order[row]);
    table.dims[row] = dims[order[row]];
    table.labels.push_back("G" + std::to_string(row));
  }

  // Row orthonormality under class weights pins the numerical quality.
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) {
      Complex acc(0, 0);
      for (int c = 0; c < r; ++c)
        acc += static_cast<double>(table.class_sizes[c]) * table.chi(x, c) *
               std::conj(table.chi(y, c));
      acc /= static_cast<double>(n);
      double expect = (x == y) ? 1.0 : 0.0;
      if (std::abs(acc - Complex(expect, 0)) > tol)
        fail(Errc::numerical_degeneracy,
             "character rows fail orthonormality within tolerance");
    }

  table.spinor.resize(r);
  const int mc = table.minus_identity_class;
  for (int row = 0; row < r; ++row) {
    Complex at_minus = table.chi(row, mc);
    if (near(at_minus, table.dims[row]))
      table.spinor[row] = false;
    else if (near(at_minus, -table.dims[row]))
      table.spinor[row] = true;
    else
      fail(Errc::inconsistent_table,
           "character at -identity is neither +dim nor -dim");
  }

  table.aliases = display_aliases(group, table);
  return table;
}

}  // namespace wracah
