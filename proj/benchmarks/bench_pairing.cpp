#include <benchmark/benchmark.h>

#include <memory>

#include "qplane/ktheory.hpp"
#include "qplane/pairing.hpp"
#include "qplane/projlib.hpp"
#include "qplane/rep.hpp"

using namespace qplane;

namespace {

std::shared_ptr<const SpectralSet> full_half() {
  static const auto x = std::make_shared<const SpectralSet>(SpectralSet::full(Rational(1, 2)));
  return x;
}

std::shared_ptr<const SpectralSet> three_components() {
  static const auto x = std::make_shared<const SpectralSet>(SpectralSet::generic(
      Rational(1, 2), {{Rational(13, 25), Rational(11, 20)}, {Rational(3, 5), Rational(31, 50)},
                       {Rational(7, 10), Rational(18, 25)}}));
  return x;
}

void BM_PairBott(benchmark::State& state) {
  const auto p = bott(static_cast<int>(state.range(0)), full_half()).realized;
  const auto f = KHomClass::fredholm(Rational(7, 10));
  for (auto _ : state) benchmark::DoNotOptimize(pair(f, p));
}
BENCHMARK(BM_PairBott)->Arg(1)->Arg(3)->Arg(5);

void BM_PairPowersRieffel(benchmark::State& state) {
  const auto p = powers_rieffel(static_cast<int>(state.range(0)), full_half()).realized;
  const auto f = KHomClass::fredholm(Rational(7, 10));
  for (auto _ : state) benchmark::DoNotOptimize(pair(f, p));
}
BENCHMARK(BM_PairPowersRieffel)->Arg(1)->Arg(5);

void BM_FredholmTraceWindow(benchmark::State& state) {
  const auto p = bott(2, full_half()).realized;
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fredholm_trace(p, Rational(7, 10), K));
  state.SetComplexityN(K);
}
BENCHMARK(BM_FredholmTraceWindow)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_VerifyProjection(benchmark::State& state) {
  const auto p = bott(static_cast<int>(state.range(0)), full_half());
  for (auto _ : state) benchmark::DoNotOptimize(verify_projection(p));
}
BENCHMARK(BM_VerifyProjection)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_VerifyIndicator(benchmark::State& state) {
  const auto p = indicator({Rational(1, 8), false, Rational(1), false}, three_components());
  for (auto _ : state) benchmark::DoNotOptimize(verify_projection(p));
}
BENCHMARK(BM_VerifyIndicator);

void BM_RepPiY(benchmark::State& state) {
  const auto p = bott(3, full_half()).realized;
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rep_pi_y(p, Rational(7, 10), K));
}
BENCHMARK(BM_RepPiY)->Arg(16)->Arg(64)->Arg(256);

void BM_TeoPairingMatrix(benchmark::State& state) {
  const auto x = three_components();
  const auto gens = generator_projections(x, true);
  const auto fam = homology_family(*x);
  for (auto _ : state) benchmark::DoNotOptimize(integer_pairing_matrix(gens, fam));
}
BENCHMARK(BM_TeoPairingMatrix)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
