#include "wracah/error.hpp"

namespace wracah {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_element: return "invalid-element";
    case Errc::invalid_label: return "invalid-label";
    case Errc::not_finite: return "not-finite";
    case Errc::ill_conditioned_generators: return "ill-conditioned-generators";
    case Errc::not_a_double_group: return "not-a-double-group";
    case Errc::numerical_degeneracy: return "numerical-degeneracy";
    case Errc::inconsistent_table: return "inconsistent-table";
    case Errc::scan_exhausted: return "scan-exhausted";
    case Errc::projection_deficiency: return "projection-deficiency";
    case Errc::not_a_subgroup: return "not-a-subgroup";
    case Errc::dependency: return "dependency";
    case Errc::convention_mismatch: return "convention-mismatch";
    case Errc::bad_input: return "bad-input";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wracah
