#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include <zsum/congruence.hpp>
#include <zsum/group.hpp>
#include <zsum/length_set.hpp>
#include <zsum/profile.hpp>
#include <zsum/rng.hpp>
#include <zsum/search.hpp>
#include <zsum/sequence.hpp>

namespace {

zsum::GSequence random_sequence(const zsum::Group& g, std::uint64_t len, std::uint64_t seed) {
  zsum::Rng rng(seed);
  return zsum::sample_uniform(g, len, rng);
}

// Full N_k profile with arbitrary precision counts; items are DP cell updates.
void BM_ProfileExact(benchmark::State& state) {
  const zsum::Group g = zsum::parse_group("C3*C9");
  const std::uint64_t len = static_cast<std::uint64_t>(state.range(0));
  const zsum::GSequence x = random_sequence(g, len, 7);
  for (auto _ : state) benchmark::DoNotOptimize(zsum::profile(x));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(len * g.order() * (len + 1)));
}
BENCHMARK(BM_ProfileExact)->Arg(16)->Arg(32)->Arg(64);

void BM_ProfileModular(benchmark::State& state) {
  const zsum::Group g = zsum::parse_group("C3*C9");
  const std::uint64_t len = static_cast<std::uint64_t>(state.range(0));
  const zsum::GSequence x = random_sequence(g, len, 7);
  zsum::ProfileOptions opts;
  opts.mode = zsum::CountMode::modular;
  opts.modulus = 3;
  for (auto _ : state) benchmark::DoNotOptimize(zsum::profile(x, opts));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(len * g.order() * (len + 1)));
}
BENCHMARK(BM_ProfileModular)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

// Rejection predicate on the fuzzing hot path: does a length-26 sequence over
// C3*C9 contain a zero-sum subsequence of length exactly 9?
void BM_HasExactLengthZeroSum(benchmark::State& state) {
  const zsum::Group g = zsum::parse_group("C3*C9");
  zsum::Rng rng(11);
  std::vector<zsum::GSequence> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(zsum::sample_uniform(g, 26, rng));
  const zsum::LengthSet nine = zsum::LengthSet::singleton(9);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zsum::has_zero_sum_with_length_in(inputs[i], nine));
    i = (i + 1) % inputs.size();
  }
}
BENCHMARK(BM_HasExactLengthZeroSum);

void BM_DavenportSearch(benchmark::State& state) {
  const char* const names[] = {"C3*C3", "C2*C4", "C3*C3*C3", "C3*C9"};
  const zsum::Group g = zsum::parse_group(names[state.range(0)]);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const zsum::InvariantResult r = zsum::compute_davenport(g);
    benchmark::DoNotOptimize(r.value);
    nodes += r.stats.nodes;
  }
  state.counters["nodes/s"] =
      benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsRate);
  state.SetLabel(g.name());
}
BENCHMARK(BM_DavenportSearch)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

void BM_EgzSearch(benchmark::State& state) {
  const zsum::Group g = zsum::parse_group("C3*C3");
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const zsum::InvariantResult r = zsum::compute_egz(g);
    benchmark::DoNotOptimize(r.value);
    nodes += r.stats.nodes;
  }
  state.counters["nodes/s"] =
      benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EgzSearch);

void BM_LucasBinom(benchmark::State& state) {
  const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
  const std::uint64_t limit = zsum::checked_pow(p, 6);
  zsum::Rng rng(3);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (int i = 0; i < 1024; ++i) pairs.emplace_back(rng.below(limit), rng.below(limit));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zsum::lucas_binom(pairs[i].first, pairs[i].second, p));
    i = (i + 1) % pairs.size();
  }
}
BENCHMARK(BM_LucasBinom)->Arg(2)->Arg(3)->Arg(5);

void BM_MultisetEnumeration(benchmark::State& state) {
  const zsum::Group g = zsum::parse_group("C3*C3");
  for (auto _ : state) {
    zsum::MultisetEnumerator en(g, 7);
    zsum::GSequence J(g);
    std::uint64_t count = 0;
    while (en.next(J)) ++count;
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * 6435);
}
BENCHMARK(BM_MultisetEnumeration);

}  // namespace

BENCHMARK_MAIN();
