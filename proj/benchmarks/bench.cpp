// Microbenchmarks for the construction-heavy paths: group closure, character
// tables, canonical irreps, reduction tables, coupling symbol tables, and the
// crystal-field build. Each benchmark constructs fresh objects so that the
// memoizing caches inside Scheme do not hide the cost being measured.

#include <benchmark/benchmark.h>

#include "wracah/crystal_field.hpp"
#include "wracah/scheme.hpp"
#include "wracah/selfcheck.hpp"
#include "wracah/symbols.hpp"

using wracah::HalfInt;

namespace {

void group_closure(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::preset_group("O*"));
}
BENCHMARK(group_closure);

void character_table(benchmark::State& state) {
  const auto group = wracah::preset_group("O*");
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::character_table(group));
}
BENCHMARK(character_table);

void canonical_irreps(benchmark::State& state) {
  const auto group = wracah::preset_group("O*");
  const auto table = wracah::character_table(group);
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::irrep_matrices(group, table));
}
BENCHMARK(canonical_irreps);

void scheme_from_preset(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::Scheme::from_preset("O*"));
}
BENCHMARK(scheme_from_preset);

void reduction_table(benchmark::State& state) {
  const wracah::Scheme scheme = wracah::Scheme::from_preset("O*");
  const HalfInt j = HalfInt::from_twice(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::reduction_coefficients(
        scheme.group(), scheme.table(), scheme.irreps(), j));
}
BENCHMARK(reduction_table)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void coupling_symbol_table(benchmark::State& state) {
  const wracah::Scheme scheme = wracah::Scheme::from_preset("O*");
  const HalfInt j(2), k(4);
  scheme.reduction(j);
  scheme.reduction(k);
  for (auto _ : state) {
    wracah::SymbolStore store(scheme);
    benchmark::DoNotOptimize(store.f_table(j, j, k));
  }
}
BENCHMARK(coupling_symbol_table);

void isoscalar_extraction(benchmark::State& state) {
  const wracah::Scheme scheme = wracah::Scheme::from_preset("O*");
  const HalfInt j32 = HalfInt::from_twice(3);
  for (auto _ : state) {
    wracah::SymbolStore store(scheme);
    benchmark::DoNotOptimize(store.isoscalar_factors(j32, j32, HalfInt(1)));
  }
}
BENCHMARK(isoscalar_extraction);

void crystal_field_build(benchmark::State& state) {
  const wracah::Scheme scheme = wracah::Scheme::from_preset("O*");
  const auto params = wracah::CrystalFieldParams::octahedral(1.0);
  scheme.reduction(HalfInt(2));
  for (auto _ : state) {
    const auto adapted = wracah::cf_matrix_adapted(params, 2, scheme);
    benchmark::DoNotOptimize(wracah::level_scheme(adapted));
  }
}
BENCHMARK(crystal_field_build);

void consistency_battery(benchmark::State& state) {
  const wracah::Scheme scheme = wracah::Scheme::from_preset("D3*");
  wracah::SelfCheckOptions options;
  options.j_max = HalfInt(2);
  options.samples = 50;
  for (auto _ : state)
    benchmark::DoNotOptimize(wracah::run_selfcheck(scheme, options));
}
BENCHMARK(consistency_battery);

}  // namespace

BENCHMARK_MAIN();
