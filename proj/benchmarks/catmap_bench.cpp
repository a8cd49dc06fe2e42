#include <benchmark/benchmark.h>

#include "encmatch/catmap.hpp"
#include "encmatch/pipeline.hpp"
#include "encmatch/synth.hpp"

namespace {

using namespace encmatch;

void BM_Period(benchmark::State& state) {
  const catmap::CatMapKey key{static_cast<std::uint32_t>(state.range(0)), 1, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(catmap::period(key));
}
BENCHMARK(BM_Period)->Arg(32)->Arg(512)->Arg(4096);

void BM_ForwardTable(benchmark::State& state) {
  const catmap::CatMapKey key{static_cast<std::uint32_t>(state.range(0)), 1, 1, 17};
  for (auto _ : state) benchmark::DoNotOptimize(catmap::forward_table(key));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ForwardTable)->Arg(32)->Arg(512);

void BM_EncodeTiled(benchmark::State& state) {
  const auto img = synth::scene(512, 512, 1);
  const catmap::CatMapKey key{32, 1, 1, 5};
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::encode_tiled(img, key));
  state.SetBytesProcessed(state.iterations() * 512 * 512 * 3);
}
BENCHMARK(BM_EncodeTiled);

void BM_EncodeFullFrame(benchmark::State& state) {
  const auto img = synth::scene(512, 512, 1);
  const catmap::CatMapKey key{512, 1, 1, 17};
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::encode_fullframe(img, key));
  state.SetBytesProcessed(state.iterations() * 512 * 512 * 3);
}
BENCHMARK(BM_EncodeFullFrame);

}  // namespace
