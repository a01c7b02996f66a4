#include <benchmark/benchmark.h>

#include "halfline/exactalg.hpp"
#include "halfline/fsm.hpp"
#include "halfline/spectral.hpp"
#include "halfline/tridiag.hpp"

using namespace halfline;

namespace {

Potential three_periodic() {
  return Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)});
}

void BM_TransferProductInteger(benchmark::State& state) {
  Potential p = Potential::periodic_integers({1, -2, 0, 3, 1});
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_product_as<mpz_class>(p, mpz_class(1), 0, n - 1));
  state.SetComplexityN(n);
}
BENCHMARK(BM_TransferProductInteger)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_TransferProductDouble(benchmark::State& state) {
  Potential p = Potential::sturmian();
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_product_as<double>(p, 0.3, 0, n - 1));
}
BENCHMARK(BM_TransferProductDouble)->RangeMultiplier(8)->Range(64, 32768);

void BM_BisectionEigenvalues(benchmark::State& state) {
  Potential p = Potential::random(1, {-1, 0, 2}, 1 << 20, 1 << 20, Scalar(0));
  SymTridiag a = SymTridiag::section(p, 0, state.range(0) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(a.eigenvalues());
}
BENCHMARK(BM_BisectionEigenvalues)->RangeMultiplier(4)->Range(64, 1024);

void BM_SmallestSingularValue(benchmark::State& state) {
  Potential p = three_periodic();
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(p, 0, n - 1, 0.25));
}
BENCHMARK(BM_SmallestSingularValue)->RangeMultiplier(4)->Range(64, 16384);

void BM_Bands(benchmark::State& state) {
  std::vector<long> word;
  for (long k = 0; k < state.range(0); ++k) word.push_back((k * 7) % 11 - 5);
  Discriminant d = discriminant(Potential::periodic_integers(word));
  for (auto _ : state) benchmark::DoNotOptimize(bands(d));
}
BENCHMARK(BM_Bands)->DenseRange(2, 8, 2);

void BM_RunFsm(benchmark::State& state) {
  Potential p = Potential::periodic_integers({4, -1, 5});
  auto scheme = SectionScheme::full_line(CutoffSequence::arithmetic(-3, -11), CutoffSequence::arithmetic(2, 13),
                                         static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_fsm(p, scheme, 0.0, CompactVector::unit(0)));
}
BENCHMARK(BM_RunFsm)->Arg(10)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
