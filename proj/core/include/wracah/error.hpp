#pragma once

#include <stdexcept>
#include <string>

namespace wracah {

// Machine-readable error identifiers; the CLI forwards them verbatim in its
// JSON error objects.
enum class Errc {
  invalid_element,              // matrix is not in SU(2) within tolerance
  invalid_label,                // malformed quantum label (j, m parity, ...)
  not_finite,                   // group closure exceeded the element budget
  ill_conditioned_generators,   // two elements closer than the ambiguity band
  not_a_double_group,           // closure does not contain -identity
  numerical_degeneracy,         // eigen-separation failed after retries
  inconsistent_table,           // internal cross-check on a computed table failed
  scan_exhausted,               // irrep never appeared in the scanned restrictions
  projection_deficiency,        // projector rank fell short of the multiplicity
  not_a_subgroup,               // chain labelling with incompatible groups
  dependency,                   // required ingredient missing or failed
  convention_mismatch,          // identity that pins the conventions failed
  bad_input,                    // malformed file / CLI input
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace wracah
