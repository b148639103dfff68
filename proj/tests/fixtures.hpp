#pragma once

// Shared, lazily built schemes so test cases do not pay for irrep harvesting
// over and over. All tests treat these as read-only.

#include "wracah/scheme.hpp"

namespace fixtures {

const wracah::Scheme& octahedral();        // O*, fourfold axis along z
const wracah::Scheme& octahedral_trig();   // O*trig, threefold axis along z
const wracah::Scheme& tetragonal();        // D4*
const wracah::Scheme& trigonal();          // D3*, twofold axis along y

// The three groups named in most whole-suite sweeps.
const std::vector<const wracah::Scheme*>& standard_presets();

}  // namespace fixtures
