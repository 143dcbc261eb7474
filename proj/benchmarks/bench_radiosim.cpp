#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "radiosim/channel.hpp"
#include "radiosim/distribution.hpp"
#include "radiosim/graph.hpp"
#include "radiosim/protocols.hpp"
#include "radiosim/rng.hpp"

using namespace radiosim;

static void BM_GnpGeneration(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const double p = 8.0 * std::log2(static_cast<double>(n)) / n;
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_gnp_directed(n, p, seed++));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GnpGeneration)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

static void BM_ChannelStep(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const double p = 8.0 * std::log2(static_cast<double>(n)) / n;
  const DirectedGraph g = gen_gnp_directed(n, p, 7);
  std::vector<NodeId> tx;
  for (NodeId u = 0; u < n; ++u)
    if (rng::coin(7, 99, u, 0, 0.05)) tx.push_back(u);
  for (auto _ : state) benchmark::DoNotOptimize(step(g, tx));
  state.SetItemsProcessed(state.iterations() * tx.size());
}
BENCHMARK(BM_ChannelStep)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

static void BM_BroadcastRandom(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const double p = 8.0 * std::log2(static_cast<double>(n)) / n;
  const DirectedGraph g = gen_gnp_directed(n, p, 3);
  const PhaseParams params = derive_phase_params(n, p);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(broadcast_random(g, 0, params, {seed++, 0}));
}
BENCHMARK(BM_BroadcastRandom)->Arg(1 << 10)->Arg(1 << 13);

static void BM_BroadcastGeneral(benchmark::State& state) {
  const DirectedGraph g = gen_lowerbound_network(256, 40);
  const ProbabilityTable dist = alpha_distribution(256, 40);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(broadcast_general(g, 0, dist, 8.0, {seed++, 0}));
}
BENCHMARK(BM_BroadcastGeneral);

static void BM_ExactInformProbability(benchmark::State& state) {
  const ProbabilityTable dist = alpha_distribution(1u << 16, 1u << 6);
  std::uint32_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_inform_probability(m, dist));
    m = m % 4096 + 1;
  }
}
BENCHMARK(BM_ExactInformProbability);

BENCHMARK_MAIN();
