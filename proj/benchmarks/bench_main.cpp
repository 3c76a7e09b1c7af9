#include <benchmark/benchmark.h>

#include "krein/extension.hpp"
#include "krein/model_family.hpp"
#include "krein/quasi_basis.hpp"
#include "krein/random.hpp"

namespace {

void BM_KreinInterval(benchmark::State& state) {
  krein::random::Rng rng(7);
  const auto t0 = krein::random::partial_contraction(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(krein::krein_interval(t0));
}
BENCHMARK(BM_KreinInterval)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_ExtensionSweep(benchmark::State& state) {
  krein::random::Rng rng(11);
  const auto t0 = krein::random::partial_contraction(8, rng);
  const auto iv = krein::krein_interval(t0);
  for (auto _ : state) {
    const auto x = krein::random_x_solution(iv, rng);
    benchmark::DoNotOptimize(krein::extremality_test(t0, krein::extension_from_x(iv, x)));
  }
}
BENCHMARK(BM_ExtensionSweep);

void BM_ModelTruncation(benchmark::State& state) {
  const krein::model::SequenceModelSpec spec{1.25, krein::model::Variant::both_constraints,
                                             state.range(0), {}};
  for (auto _ : state) {
    const auto m = krein::model::build_model(spec);
    benchmark::DoNotOptimize(krein::krein_interval(m.T0));
  }
}
BENCHMARK(BM_ModelTruncation)->Arg(8)->Arg(32)->Arg(64);

void BM_XiDiagnostic(benchmark::State& state) {
  const krein::model::SequenceModelSpec spec{0.75, krein::model::Variant::both_constraints, 8, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(krein::model::xi_preimage_diagnostic(spec, state.range(0)));
}
BENCHMARK(BM_XiDiagnostic)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_ShiftedFamilyGGram(benchmark::State& state) {
  const krein::qb::Grid grid = krein::qb::default_hermite_grid(state.range(0), 0.5);
  for (auto _ : state) {
    const auto fam = krein::qb::shifted_family(0.5, state.range(0), grid);
    benchmark::DoNotOptimize(krein::qb::g_gram_fourier(fam));
  }
}
BENCHMARK(BM_ShiftedFamilyGGram)->Arg(8)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_AnharmonicFamily(benchmark::State& state) {
  const auto w = krein::qb::builtin_weight("rational");
  const krein::qb::Grid grid = krein::qb::default_anharmonic_grid(4.0, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(krein::qb::anharmonic_family(4.0, w, state.range(0), grid));
}
BENCHMARK(BM_AnharmonicFamily)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
