#pragma once

#include <string>
#include <vector>

#include "wracah/su2.hpp"

namespace wracah {

// Finite double group G* in SU(2): closed element list with multiplication
// table and conjugacy classes. elements[0] is the identity; class 0 = {0};
// remaining classes are ordered by their smallest element index, elements
// themselves in breadth-first generation order (deterministic).
struct DoubleGroup {
  std::string name;
  std::vector<SU2Element> elements;
  std::vector<int> generator_indices;
  std::vector<std::vector<int>> mult;  // mult[i][k] = index of elements[i]*elements[k]
  std::vector<int> inverse;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  int minus_identity = -1;  // element index of -1 (always present)

  int order() const { return static_cast<int>(elements.size()); }
  int num_classes() const { return static_cast<int>(classes.size()); }
  int class_size(int c) const { return static_cast<int>(classes[c].size()); }
  int minus_identity_class() const { return class_of[minus_identity]; }
  // Index of the closest stored element within tol, or -1.
  int index_of(const SU2Element& g, double tol = kElementTolerance) const;
  // class_of composed with the product i*k, convenience for projections.
  int product(int i, int k) const { return mult[i][k]; }
};

struct GenerateOptions {
  std::size_t max_order = 256;
  // Validation tolerance for the supplied generators (tau_num by default).
  double unitary_tolerance = kDefaultTolerance;
  // Dedup distance; matches in [element_tolerance, 10*element_tolerance) are
  // ambiguous and abort generation.
  double element_tolerance = kElementTolerance;
};

// Closes the generator set under multiplication. Throws:
//   invalid_element             a generator fails the SU(2) check
//   not_finite                  closure exceeds max_order
//   ill_conditioned_generators  a product lands in the ambiguity band
//   not_a_double_group          the closure does not contain -identity
DoubleGroup generate_group(const std::string& name,
                           const std::vector<SU2Element>& generators,
                           const GenerateOptions& options = {});

// Built-in groups: "O*" (binary octahedral, fourfold axis along z), "O*trig"
// (the same group rotated so a threefold axis is along z and the z-oriented
// D3* is a subgroup), "D4*", "D3*" (binary dihedral), "C4v*" (realized by the
// same SU(2) matrices as D4*).
DoubleGroup preset_group(const std::string& name);
const std::vector<std::string>& preset_group_names();
bool is_preset_group(const std::string& name);

// True when every element of sub lies in super (within tol).
bool is_subgroup(const DoubleGroup& sub, const DoubleGroup& super,
                 double tol = kElementTolerance);

}  // namespace wracah
