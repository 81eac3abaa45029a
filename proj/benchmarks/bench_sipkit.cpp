#include <benchmark/benchmark.h>

#include "sipkit/auerbach.hpp"
#include "sipkit/checker.hpp"
#include "sipkit/sampling.hpp"
#include "sipkit/sip.hpp"

namespace {

using namespace sipkit;

void BM_SipEval(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto spec = NormSpec::lp(4.0, dim);
  auto rng = make_rng(1);
  const Vector x = gaussian_vector(rng, dim), y = gaussian_vector(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(sip_eval(spec, x, y));
}
BENCHMARK(BM_SipEval)->Arg(2)->Arg(8)->Arg(64);

void BM_SipEvalDirectSum(benchmark::State& state) {
  const auto spec = build_direct_sum({NormSpec::lp(4.0, 4), NormSpec::lp(3.0, 4)});
  auto rng = make_rng(2);
  const Vector x = gaussian_vector(rng, 8), y = gaussian_vector(rng, 8);
  for (auto _ : state) benchmark::DoNotOptimize(sip_eval(spec, x, y));
}
BENCHMARK(BM_SipEvalDirectSum);

void BM_VerifyTheorem(benchmark::State& state) {
  const auto spec = build_direct_sum({NormSpec::lp(4.0, 2), NormSpec::lp(4.0, 2)});
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = a(1, 0) = 2.0;
  a(2, 2) = 1.0;
  a(3, 3) = -1.0;
  const Sampler s{7, static_cast<int>(state.range(0)), SampleStrategy::mixed};
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(spec, a, s));
}
BENCHMARK(BM_VerifyTheorem)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_AuerbachSearch(benchmark::State& state) {
  const auto spec = NormSpec::lp(3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(auerbach_search(spec, 7, 4));
}
BENCHMARK(BM_AuerbachSearch)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
