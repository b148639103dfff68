#pragma once

#include <string>

#include "wracah/crystal_field.hpp"
#include "wracah/error.hpp"
#include "wracah/symbols.hpp"

namespace wracah {

// All emitted numbers are rounded to 12 significant digits, with -0
// normalized to 0 and |x| < 5e-13 flushed to exact 0, so repeated runs and
// mathematically exact zeros print identically.
double round_emitted(double x);
std::string format_number(double x);

enum class OutputFormat { json, pretty, csv };
// Accepts "json", "pretty", "csv"; throws Error(bad_input) otherwise.
OutputFormat parse_format(const std::string& name);

// Group description file:
//   {"name": "...", "max_order": 256,
//    "generators": [ [[[re,im],[re,im]], [[re,im],[re,im]]], ... ]}
// where each generator is a 2x2 complex matrix in row-major order.
DoubleGroup load_group_file(const std::string& path,
                            GenerateOptions options = {});
// Preset name or path to a group description file.
DoubleGroup resolve_group(const std::string& name_or_path,
                          GenerateOptions options = {});

// Crystal-field parameter file:
//   {"ell": 2, "symmetry": "O",
//    "terms": [{"k": 4, "q": 0, "B": 1.0}, ...]}
// B may be a number or an [re, im] pair.
struct CrystalFieldInput {
  int ell = 2;
  CrystalFieldParams params;
};
CrystalFieldInput load_cf_params(const std::string& path);

// Deterministic emitters; every function returns the full document including
// a trailing newline.
std::string emit_group(const Scheme& scheme, OutputFormat format);
std::string emit_branching(const Scheme& scheme, const BranchingRule& rule,
                           OutputFormat format);
std::string emit_reduction(const Scheme& scheme, const ReductionTable& table,
                           OutputFormat format);
std::string emit_chain(const Scheme& parent, const Scheme& child,
                       const ChainTable& chain, OutputFormat format);
// kind is "f" or "fbar" (affects captions only).
std::string emit_symbol_table(const Scheme& scheme, const SymbolTable& table,
                              const std::string& kind, OutputFormat format);
std::string emit_two_j(const Scheme& scheme, HalfInt j,
                       const Eigen::MatrixXcd& matrix, OutputFormat format);
std::string emit_isoscalars(const Scheme& scheme, const IsoscalarSet& set,
                            OutputFormat format);
std::string emit_levels(const std::string& group_name, const LevelScheme& levels,
                        const AdaptedCrystalField* adapted,
                        OutputFormat format);
std::string emit_error(Errc code, const std::string& message);

}  // namespace wracah
