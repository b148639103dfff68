#include "wracah/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wracah/error.hpp"

namespace wracah {

namespace {

double distance(const SU2Element& a, const SU2Element& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Snap to the closest special-unitary matrix (polar decomposition via SVD,
// then divide out the residual determinant phase).
SU2Element polish(const SU2Element& g) {
  Eigen::JacobiSVD<SU2Element> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SU2Element u = svd.matrixU() * svd.matrixV().adjoint();
  Complex s = std::sqrt(u.determinant());
  if (std::real(s) < 0.0) s = -s;
  return u / s;
}

// Index of g in elements, or -1 when clearly absent. Aborts when the closest
// match falls in the ambiguity band [tol, 10*tol).
int locate(const std::vector<SU2Element>& elements, const SU2Element& g,
           double tol) {
  double best = 1e300;
  int arg = -1;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    double d = distance(elements[i], g);
    if (d < best) {
      best = d;
      arg = static_cast<int>(i);
    }
  }
  if (best < tol) return arg;
  if (best < 10.0 * tol)
    fail(Errc::ill_conditioned_generators,
         "two group elements are " + std::to_string(best) +
             " apart, inside the ambiguity band [" + std::to_string(tol) +
             ", " + std::to_string(10.0 * tol) +
             "); tighten the generators or adjust the tolerance");
  return -1;
}

}  // namespace

int DoubleGroup::index_of(const SU2Element& g, double tol) const {
  double best = 1e300;
  int arg = -1;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    double d = distance(elements[i], g);
    if (d < best) {
      best = d;
      arg = static_cast<int>(i);
    }
  }
  return best < tol ? arg : -1;
}

DoubleGroup generate_group(const std::string& name,
                           const std::vector<SU2Element>& generators,
                           const GenerateOptions& options) {
  if (generators.empty())
    fail(Errc::bad_input, "generator list for '" + name + "' is empty");
  for (const auto& g : generators) require_su2(g, options.unitary_tolerance);

  DoubleGroup group;
  group.name = name;
  group.elements.push_back(SU2Element::Identity());

  std::vector<SU2Element> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(polish(g));

  // Breadth-first closure; discovery order fixes the element indexing.
  for (std::size_t head = 0; head < group.elements.size(); ++head) {
    for (const auto& g : gens) {
      SU2Element h = polish(group.elements[head] * g);
      if (locate(group.elements, h, options.element_tolerance) >= 0) continue;
      if (group.elements.size() >= options.max_order)
        fail(Errc::not_finite,
             "closure of '" + name + "' exceeded max_order=" +
                 std::to_string(options.max_order) +
                 " elements; the generator set does not close");
      group.elements.push_back(h);
    }
  }

  for (const auto& g : gens) {
    int idx = locate(group.elements, g, options.element_tolerance);
    group.generator_indices.push_back(idx);
  }

  const int n = group.order();
  group.mult.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int idx = locate(group.elements, group.elements[i] * group.elements[k],
                       options.element_tolerance);
      if (idx < 0)
        fail(Errc::inconsistent_table,
             "product of elements " + std::to_string(i) + " and " +
                 std::to_string(k) + " escaped the closed element set");
      group.mult[i][k] = idx;
    }

  group.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (group.mult[i][k] == 0) {
        group.inverse[i] = k;
        break;
      }

  group.class_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (group.class_of[i] >= 0) continue;
    int c = group.num_classes();
    std::vector<int> orbit;
    group.class_of[i] = c;
    orbit.push_back(i);
    for (int g = 0; g < n; ++g) {
      int conj = group.mult[group.mult[g][i]][group.inverse[g]];
      if (group.class_of[conj] < 0) {
        group.class_of[conj] = c;
        orbit.push_back(conj);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    group.classes.push_back(std::move(orbit));
  }

  group.minus_identity =
      group.index_of(-SU2Element::Identity(), options.element_tolerance);
  if (group.minus_identity < 0)
    fail(Errc::not_a_double_group,
         "closure of '" + name +
             "' does not contain -identity; the generators span an odd-order "
             "subgroup that is not a double group");
  return group;
}

namespace {

DoubleGroup make_preset(const std::string& name) {
  using std::numbers::pi;
  GenerateOptions options;
  if (name == "O*") {
    options.max_order = 96;
    return generate_group(
        name, {su2_rotation_z(pi / 2), su2_rotation(2 * pi / 3, 1, 1, 1)},
        options);
  }
  if (name == "O*trig") {
    // Same abstract group as O*, rotated so a threefold axis lies along z and
    // a twofold edge axis along y; the D3* preset is then a subgroup. The
    // old fourfold z axis lands at (sqrt(2/3), 0, sqrt(1/3)).
    options.max_order = 96;
    return generate_group(
        name,
        {su2_rotation_z(2 * pi / 3), su2_rotation(pi, 0, 1, 0),
         su2_rotation(pi / 2, std::sqrt(2.0 / 3.0), 0.0, std::sqrt(1.0 / 3.0))},
        options);
  }
  if (name == "D4*" || name == "C4v*") {
    options.max_order = 32;
    return generate_group(name,
                          {su2_rotation_z(pi / 2), su2_rotation(pi, 1, 0, 0)},
                          options);
  }
  if (name == "D3*") {
    // Twofold axis along y, matching the real-amplitude trigonal field
    // convention B43*(C(4,3) - C(4,-3)).
    options.max_order = 24;
    return generate_group(
        name, {su2_rotation_z(2 * pi / 3), su2_rotation(pi, 0, 1, 0)},
        options);
  }
  fail(Errc::bad_input, "unknown preset group '" + name + "'");
}

}  // namespace

const std::vector<std::string>& preset_group_names() {
  static const std::vector<std::string> names = {"O*", "O*trig", "D4*", "D3*",
                                                 "C4v*"};
  return names;
}

bool is_preset_group(const std::string& name) {
  const auto& names = preset_group_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

DoubleGroup preset_group(const std::string& name) { return make_preset(name); }

bool is_subgroup(const DoubleGroup& sub, const DoubleGroup& super, double tol) {
  for (const auto& g : sub.elements)
    if (super.index_of(g, tol) < 0) return false;
  return true;
}

}  // namespace wracah
