#include <benchmark/benchmark.h>

#include "encmatch/augment.hpp"
#include "encmatch/synth.hpp"

namespace {

using namespace encmatch;

void BM_ApplyOp(benchmark::State& state) {
  const auto op = augment::kOpOrder[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(augment::op_name(op)));
  const auto img = synth::scene(512, 512, 1);
  const augment::AugmentConfig cfg;
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(augment::apply_op(op, img, cfg, rng));
}
BENCHMARK(BM_ApplyOp)->DenseRange(0, augment::kOpCount - 1);

void BM_MakeSample(benchmark::State& state) {
  const auto a = synth::scene(512, 512, 3), b = synth::scene(512, 512, 4);
  const augment::AugmentConfig cfg;
  const auto approach = static_cast<augment::Approach>(state.range(0));
  state.SetLabel(std::string(augment::approach_name(approach)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(augment::make_sample(a, b, approach, cfg, seed++));
}
BENCHMARK(BM_MakeSample)->DenseRange(0, 3);

}  // namespace
