// Serial reference vs OpenMP kernels on identical shard plans. Both paths
// produce the same counts; only the wall clock differs.
#include <benchmark/benchmark.h>

#include "tnf/finite_lattice.hpp"
#include "tnf/kernels.hpp"
#include "tnf/measures.hpp"

namespace {

using tnf::Execution;

tnf::CategoricalSampler sampler() {
  const tnf::Alpha a = tnf::validate(tnf::Alpha(
      {{1, tnf::Rational(1, 2)}, {-1, tnf::Rational(1, 4)}, {0, tnf::Rational(1, 4)}}));
  return tnf::make_sampler(a);
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_FixedLabellings(benchmark::State& state) {
  const auto s = sampler();
  const auto g = tnf::parse_permutation("(1 2)(3 4 5)(6 7 8 9)");
  for (auto _ : state)
    benchmark::DoNotOptimize(tnf::count_fixed_labellings(s, g, 1'000'000, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void BM_JointCounts(benchmark::State& state) {
  const auto s = sampler();
  for (auto _ : state)
    benchmark::DoNotOptimize(tnf::joint_label_counts(s, 3, 1'000'000, 2, mode(state)));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void BM_BlockHits(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(tnf::count_block_hits(2, 50, 1'000'000, 3, mode(state)));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void BM_Normalizers(benchmark::State& state) {
  const auto L = tnf::lattice::enumerate_subgroups(5);
  std::vector<tnf::lattice::ElementSet> sets;
  for (std::size_t i = 0; i < L.size(); ++i)
    sets.push_back(L.subgroup(i).members());
  for (auto _ : state)
    benchmark::DoNotOptimize(tnf::lattice::normalizer_sets(L.ambient(), sets, mode(state)));
}

} // namespace

BENCHMARK(BM_FixedLabellings)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointCounts)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockHits)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Normalizers)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
