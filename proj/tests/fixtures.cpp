#include "fixtures.hpp"

namespace fixtures {

const wracah::Scheme& octahedral() {
  static wracah::Scheme scheme = wracah::Scheme::from_preset("O*");
  return scheme;
}

const wracah::Scheme& octahedral_trig() {
  static wracah::Scheme scheme = wracah::Scheme::from_preset("O*trig");
  return scheme;
}

const wracah::Scheme& tetragonal() {
  static wracah::Scheme scheme = wracah::Scheme::from_preset("D4*");
  return scheme;
}

const wracah::Scheme& trigonal() {
  static wracah::Scheme scheme = wracah::Scheme::from_preset("D3*");
  return scheme;
}

const std::vector<const wracah::Scheme*>& standard_presets() {
  static std::vector<const wracah::Scheme*> all = {
      &octahedral(), &tetragonal(), &trigonal()};
  return all;
}

}  // namespace fixtures
