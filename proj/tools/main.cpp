// wracah: Wigner-Racah algebra of SU(2) in bases adapted to finite double
// point groups. Subcommands emit group data, branching rules, reduction
// tables, adapted coupling symbols, isoscalar factors, crystal-field level
// schemes, and a full invariant selfcheck.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wracah/crystal_field.hpp"
#include "wracah/io.hpp"
#include "wracah/selfcheck.hpp"

namespace {

using namespace wracah;

constexpr int kMaxJTwice = 80;  // j and j_max capped at 40

HalfInt parse_j(const std::string& text, const char* flag) {
  HalfInt j = HalfInt::parse(text);
  if (j.twice() < 0 || j.twice() > kMaxJTwice)
    fail(Errc::bad_input,
         std::string(flag) + " must lie in [0, 40], got " + j.str());
  return j;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::bad_input, "cannot open output file: " + out_path);
  out << text;
  if (!out) fail(Errc::bad_input, "write failed: " + out_path);
}

// Flags shared by every subcommand.
struct CommonFlags {
  std::string group = "O*";
  std::string format = "pretty";
  std::string out;
  double tolerance = kDefaultTolerance;

  void attach(CLI::App* cmd, bool with_group = true) {
    if (with_group)
      cmd->add_option("--group", group,
                      "Preset name (O*, O*trig, D4*, D3*, C4v*) or path to a "
                      "group-definition JSON file")
          ->capture_default_str();
    cmd->add_option("--format", format, "Output format: json, pretty or csv")
        ->capture_default_str();
    cmd->add_option("--out", out, "Write output to a file instead of stdout");
    cmd->add_option("--tolerance", tolerance,
                    "Numerical tolerance for table construction")
        ->capture_default_str();
  }

  Scheme scheme(const std::string& name_or_path) const {
    if (!(tolerance > 0))
      fail(Errc::bad_input, "--tolerance must be positive");
    SchemeOptions options;
    options.tolerance = tolerance;
    return Scheme(resolve_group(name_or_path), options);
  }
  Scheme scheme() const { return scheme(group); }
};

// Resolves the parent of a chain. When the requested parent does not contain
// the child in its standard orientation, the O* preset falls back to the
// trigonally oriented realization O*trig (same abstract group, threefold axis
// along z) so that chains over the D3* preset work out of the box.
Scheme chain_parent(const CommonFlags& flags, const std::string& parent_name,
                    const Scheme& child) {
  Scheme parent = flags.scheme(parent_name);
  if (is_subgroup(child.group(), parent.group())) return parent;
  if (parent_name == "O*") {
    Scheme trig = flags.scheme("O*trig");
    if (is_subgroup(child.group(), trig.group())) return trig;
  }
  fail(Errc::not_a_subgroup, child.group().name + " is not a subgroup of " +
                                 parent.group().name +
                                 " in any built-in orientation");
}

int run(int argc, char** argv) {
  CLI::App app{
      "Wigner-Racah algebra of SU(2) adapted to finite double point groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  // --- group ---
  auto* cmd_group = app.add_subcommand(
      "group", "Emit group elements, classes and the character table");
  CommonFlags group_flags;
  group_flags.attach(cmd_group);

  // --- branch ---
  auto* cmd_branch = app.add_subcommand(
      "branch", "Branching multiplicities of D^j restricted to the group");
  CommonFlags branch_flags;
  branch_flags.attach(cmd_branch);
  std::string branch_j, branch_j_max;
  cmd_branch->add_option("--j", branch_j, "Single angular momentum, e.g. 3/2");
  cmd_branch->add_option("--j-max", branch_j_max,
                         "Emit every j from 0 to this value in half steps");

  // --- reduce ---
  auto* cmd_reduce = app.add_subcommand(
      "reduce", "Reduction coefficients (jm | j a Gamma gamma) for one j");
  CommonFlags reduce_flags;
  reduce_flags.attach(cmd_reduce);
  std::string reduce_j, reduce_parent;
  cmd_reduce->add_option("--j", reduce_j, "Angular momentum, e.g. 2 or 3/2")
      ->required();
  cmd_reduce->add_option(
      "--parent", reduce_parent,
      "Chain parent group: annotate columns with parent-irrep labels");

  // --- symbols ---
  auto* cmd_symbols = app.add_subcommand(
      "symbols", "Adapted coupling symbols: f, fbar (3-symbol) or 2j metric");
  CommonFlags symbols_flags;
  symbols_flags.attach(cmd_symbols);
  std::string symbols_kind = "f";
  std::string sym_j1, sym_j2, sym_j3, sym_k, sym_j;
  cmd_symbols->add_option("--kind", symbols_kind, "f, fbar or 2j")
      ->capture_default_str();
  cmd_symbols->add_option("--j1", sym_j1, "First angular momentum");
  cmd_symbols->add_option("--j2", sym_j2, "Second angular momentum");
  cmd_symbols->add_option("--k", sym_k, "Tensor rank (kind f)");
  cmd_symbols->add_option("--j3", sym_j3, "Third angular momentum (kind fbar)");
  cmd_symbols->add_option("--j", sym_j, "Angular momentum (kind 2j)");

  // --- isoscalar ---
  auto* cmd_iso = app.add_subcommand(
      "isoscalar",
      "Isoscalar factors: f values split into group Clebsch-Gordan "
      "coefficients times reduced factors");
  CommonFlags iso_flags;
  iso_flags.attach(cmd_iso);
  std::string iso_j1, iso_j2, iso_k;
  bool iso_lenient = false;
  cmd_iso->add_option("--j1", iso_j1, "Bra angular momentum")->required();
  cmd_iso->add_option("--j2", iso_j2, "Ket angular momentum")->required();
  cmd_iso->add_option("--k", iso_k, "Tensor rank")->required();
  cmd_iso->add_flag("--lenient", iso_lenient,
                    "Report reconstruction residuals instead of failing");

  // --- cf ---
  auto* cmd_cf = app.add_subcommand(
      "cf", "One-electron crystal-field level scheme in the adapted basis");
  CommonFlags cf_flags;
  cf_flags.group.clear();  // default group inferred from the preset
  cf_flags.attach(cmd_cf);
  std::string cf_preset, cf_params_path, cf_chain;
  int cf_ell = 2;
  double b20 = 0.0, b40 = 1.0, b43 = 0.0, b44 = 0.0;
  bool b20_set = false, b43_set = false, b44_set = false;
  cmd_cf->add_option("--preset", cf_preset,
                     "Field symmetry preset: O, D4 or D3");
  cmd_cf->add_option("--params", cf_params_path,
                     "JSON parameter file with explicit (k, q, B) terms");
  cmd_cf->add_option("--ell", cf_ell, "Orbital angular momentum of the electron")
      ->capture_default_str();
  cmd_cf->add_option("--chain", cf_chain,
                     "Chain parent group: annotate levels with parent irreps");
  cmd_cf->add_option("--B40", b40, "Fourth-order axial amplitude")
      ->capture_default_str();
  cmd_cf->add_option("--B20", b20, "Second-order axial amplitude (D4, D3)")
      ->each([&](const std::string&) { b20_set = true; });
  cmd_cf->add_option("--B43", b43, "Trigonal q=3 amplitude (D3)")
      ->each([&](const std::string&) { b43_set = true; });
  cmd_cf->add_option("--B44", b44, "Tetragonal q=4 amplitude (D4)")
      ->each([&](const std::string&) { b44_set = true; });

  // --- selfcheck ---
  auto* cmd_check = app.add_subcommand(
      "selfcheck", "Run every built-in invariant check and print a report");
  CommonFlags check_flags;
  check_flags.attach(cmd_check);
  std::string check_j_max = "3";
  int check_samples = 200;
  unsigned check_seed = 777u;
  cmd_check->add_option("--j-max", check_j_max, "Largest audited j")
      ->capture_default_str();
  cmd_check->add_option("--samples", check_samples,
                        "Random tensor-element tuples to compare")
      ->capture_default_str();
  cmd_check->add_option("--seed", check_seed, "Sampling seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << emit_error(Errc::bad_input, e.what());
    return 2;
  }

  if (cmd_group->parsed()) {
    const Scheme scheme = group_flags.scheme();
    write_output(emit_group(scheme, parse_format(group_flags.format)),
                 group_flags.out);
    return 0;
  }

  if (cmd_branch->parsed()) {
    if (branch_j.empty() == branch_j_max.empty())
      fail(Errc::bad_input, "branch needs exactly one of --j or --j-max");
    const Scheme scheme = branch_flags.scheme();
    const OutputFormat format = parse_format(branch_flags.format);
    std::string text;
    if (!branch_j.empty()) {
      text = emit_branching(scheme, scheme.branching(parse_j(branch_j, "--j")),
                            format);
    } else {
      const HalfInt j_max = parse_j(branch_j_max, "--j-max");
      for (int tj = 0; tj <= j_max.twice(); ++tj)
        text += emit_branching(
            scheme, scheme.branching(HalfInt::from_twice(tj)), format);
    }
    write_output(text, branch_flags.out);
    return 0;
  }

  if (cmd_reduce->parsed()) {
    const HalfInt j = parse_j(reduce_j, "--j");
    const Scheme scheme = reduce_flags.scheme();
    const OutputFormat format = parse_format(reduce_flags.format);
    std::string text;
    if (reduce_parent.empty()) {
      text = emit_reduction(scheme, scheme.reduction(j), format);
    } else {
      const Scheme parent = chain_parent(reduce_flags, reduce_parent, scheme);
      text = emit_chain(parent, scheme,
                        chain_labels(parent, scheme, j, reduce_flags.tolerance),
                        format);
    }
    write_output(text, reduce_flags.out);
    return 0;
  }

  if (cmd_symbols->parsed()) {
    const Scheme scheme = symbols_flags.scheme();
    const OutputFormat format = parse_format(symbols_flags.format);
    SymbolStore store(scheme);
    std::string text;
    if (symbols_kind == "f") {
      if (sym_j1.empty() || sym_j2.empty() || sym_k.empty())
        fail(Errc::bad_input, "--kind f needs --j1, --j2 and --k");
      text = emit_symbol_table(
          scheme,
          store.f_table(parse_j(sym_j1, "--j1"), parse_j(sym_j2, "--j2"),
                        parse_j(sym_k, "--k")),
          "f", format);
    } else if (symbols_kind == "fbar") {
      if (sym_j1.empty() || sym_j2.empty() || sym_j3.empty())
        fail(Errc::bad_input, "--kind fbar needs --j1, --j2 and --j3");
      text = emit_symbol_table(
          scheme,
          store.fbar_table(parse_j(sym_j1, "--j1"), parse_j(sym_j2, "--j2"),
                           parse_j(sym_j3, "--j3")),
          "fbar", format);
    } else if (symbols_kind == "2j") {
      if (sym_j.empty()) fail(Errc::bad_input, "--kind 2j needs --j");
      const HalfInt j = parse_j(sym_j, "--j");
      text = emit_two_j(scheme, j, store.two_j_matrix(j), format);
    } else {
      fail(Errc::bad_input, "--kind must be f, fbar or 2j");
    }
    write_output(text, symbols_flags.out);
    return 0;
  }

  if (cmd_iso->parsed()) {
    const Scheme scheme = iso_flags.scheme();
    SymbolStore store(scheme);
    IsoscalarSet set =
        store.isoscalar_factors(parse_j(iso_j1, "--j1"), parse_j(iso_j2, "--j2"),
                                parse_j(iso_k, "--k"), !iso_lenient);
    write_output(emit_isoscalars(scheme, set, parse_format(iso_flags.format)),
                 iso_flags.out);
    return 0;
  }

  if (cmd_cf->parsed()) {
    if (!cf_preset.empty() && !cf_params_path.empty())
      fail(Errc::bad_input, "--preset and --params are mutually exclusive");

    CrystalFieldInput input;
    input.ell = cf_ell;
    std::string default_group;
    if (!cf_params_path.empty()) {
      input = load_cf_params(cf_params_path);
      if (cmd_cf->count("--ell")) input.ell = cf_ell;
    } else if (cf_preset == "O" || cf_preset.empty()) {
      if (b20_set || b43_set || b44_set)
        fail(Errc::bad_input, "preset O takes only --B40");
      input.params = CrystalFieldParams::octahedral(b40);
      default_group = "O*";
    } else if (cf_preset == "D4") {
      if (b43_set) fail(Errc::bad_input, "preset D4 takes --B20/--B40/--B44");
      input.params = CrystalFieldParams::tetragonal(b20, b40, b44);
      default_group = "D4*";
    } else if (cf_preset == "D3") {
      if (b44_set) fail(Errc::bad_input, "preset D3 takes --B20/--B40/--B43");
      input.params = CrystalFieldParams::trigonal(b20, b40, b43);
      default_group = "D3*";
    } else {
      fail(Errc::bad_input, "unknown crystal-field preset '" + cf_preset +
                                "' (expected O, D4 or D3)");
    }
    if (!input.params.symmetry.empty() && default_group.empty() &&
        !cf_params_path.empty()) {
      if (input.params.symmetry == "O") default_group = "O*";
      if (input.params.symmetry == "D4") default_group = "D4*";
      if (input.params.symmetry == "D3") default_group = "D3*";
    }
    std::string group_name =
        cf_flags.group.empty() ? default_group : cf_flags.group;
    if (group_name.empty())
      fail(Errc::bad_input,
           "no group given: pass --group or use a preset with a default");

    const Scheme scheme = cf_flags.scheme(group_name);
    AdaptedCrystalField adapted =
        cf_chain.empty()
            ? cf_matrix_adapted(input.params, input.ell, scheme)
            : cf_matrix_adapted(input.params, input.ell,
                                chain_parent(cf_flags, cf_chain, scheme),
                                scheme);
    write_output(emit_levels(scheme.group().name, level_scheme(adapted),
                             &adapted, parse_format(cf_flags.format)),
                 cf_flags.out);
    return 0;
  }

  if (cmd_check->parsed()) {
    const Scheme scheme = check_flags.scheme();
    SelfCheckOptions options;
    options.j_max = parse_j(check_j_max, "--j-max");
    options.samples = check_samples;
    options.seed = check_seed;
    options.tolerance = check_flags.tolerance;
    if (options.samples < 0) fail(Errc::bad_input, "--samples must be >= 0");
    SelfCheckReport report = run_selfcheck(scheme, options);
    write_output(report.text, check_flags.out);
    return report.ok ? 0 : 1;
  }

  fail(Errc::bad_input, "no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wracah::Error& e) {
    std::cerr << wracah::emit_error(e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << wracah::emit_error(wracah::Errc::bad_input, e.what());
    return 3;
  }
}
