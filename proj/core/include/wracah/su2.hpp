#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wracah/half_int.hpp"

namespace wracah {

using Complex = std::complex<double>;

// Default numerical tolerance for invariant checks (tau_num).
inline constexpr double kDefaultTolerance = 1e-10;
// Dedup tolerance for group elements (tau_elem); matches within this distance
// collapse, matches within [tau_elem, 10*tau_elem) are rejected as ambiguous.
inline constexpr double kElementTolerance = 1e-8;

using SU2Element = Eigen::Matrix2cd;

bool is_su2(const SU2Element& g, double tol = kDefaultTolerance);
// Throws Error(invalid_element) when g is not unitary with det 1 within tol.
void require_su2(const SU2Element& g, double tol = kDefaultTolerance);

// exp(-i*angle/2 * (n.sigma)) for axis n = (nx,ny,nz) (normalized internally).
SU2Element su2_rotation(double angle, double nx, double ny, double nz);
SU2Element su2_rotation_z(double angle);

// Projection labels of the (2j+1)-dim irrep in descending order j, j-1, .., -j.
// Every matrix in this library indexes rows/columns of a j-space this way.
std::vector<HalfInt> projection_labels(HalfInt j);
int projection_index(HalfInt j, HalfInt m);

// Rotation matrix D^j(g) over the descending-m basis, Condon-Shortley
// conventions (integer j, g = Rz(alpha): diagonal exp(-i*m*alpha)).
Eigen::MatrixXcd wigner_d(HalfInt j, const SU2Element& g,
                          double tol = kDefaultTolerance);

// 3-jm symbol (j1 j2 j3 / m1 m2 m3), Condon-Shortley phases. Returns 0 when a
// selection rule fails; throws Error(invalid_label) for |m|>j or parity
// mismatch between j and m.
double three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2,
                HalfInt m3);

// 1-jm metric (-1)^(j+m1) delta(m2, -m1).
double metric_spherical(HalfInt j, HalfInt m1, HalfInt m2);

// log(n!) backed by a fixed table; n must be small enough for the table.
double log_factorial(int n);

}  // namespace wracah
