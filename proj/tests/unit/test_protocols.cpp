#include <algorithm>
#include <cmath>
#include <optional>

#include <doctest.h>

#include "radiosim/channel.hpp"
#include "radiosim/distribution.hpp"
#include "radiosim/graph.hpp"
#include "radiosim/metrics.hpp"
#include "radiosim/protocols.hpp"
#include "radiosim/rng.hpp"

using namespace radiosim;

TEST_CASE("derive_phase_params worked examples") {
  {
    const PhaseParams p = derive_phase_params(1u << 20, std::exp2(-15));
    CHECK(p.d == doctest::Approx(32.0));
    CHECK(p.phase1_rounds == 4);
    CHECK(p.phase2_enabled);
    CHECK(p.phase2_prob == doctest::Approx(std::exp2(-5)));
    CHECK(p.phase3_prob == doctest::Approx(1.0 / 32));
    CHECK(p.phase3_rounds == 160);
    CHECK_FALSE(p.phase2_clamped);
  }
  {
    const PhaseParams p = derive_phase_params(16, 0.5);
    CHECK(p.d == doctest::Approx(8.0));
    CHECK(p.phase1_rounds == 1);
    CHECK_FALSE(p.phase2_enabled);
    CHECK(p.phase3_prob == doctest::Approx(0.25));
    CHECK(p.phase3_rounds == 32);
    CHECK(p.schedule_length() == 33);
  }
  {
    const PhaseParams p = derive_phase_params(1024, 0.0677);
    CHECK(p.phase1_rounds == 1);
    CHECK_FALSE(p.phase2_enabled);
  }
}

TEST_CASE("derive_phase_params rejects out-of-range input") {
  CHECK_THROWS_AS(derive_phase_params(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(derive_phase_params(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_phase_params(16, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(derive_phase_params(16, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(derive_phase_params(16, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("broadcast-random: at most one transmission per node") {
  const std::uint32_t n = 128;
  const double p = 0.1;
  const PhaseParams params = derive_phase_params(n, p);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DirectedGraph g = gen_gnp_directed(n, p, seed);
    const Trace t = broadcast_random(g, 0, params, {seed, 0});
    CHECK(t.max_tx_per_node() <= 1);
    CHECK(verify_trace(t, g, ProtocolTag::broadcast_random).empty());
  }
}

TEST_CASE("broadcast-random: every phase-1 active node transmits") {
  const DirectedGraph g = gen_gnp_directed(256, 0.125, 3);
  const PhaseParams params = derive_phase_params(256, 0.125);
  const Trace t = broadcast_random(g, 0, params, {3, 0});
  REQUIRE(t.phase1_rounds == params.phase1_rounds);
  REQUIRE(!t.rounds.empty());
  CHECK(t.rounds[0].transmit_set == std::vector<std::uint32_t>{0});
  for (const RoundRecord& r : t.rounds) {
    if (r.round > params.phase1_rounds) break;
    CHECK(r.transmitters == r.active);
  }
}

TEST_CASE("broadcast-random: source transmits round 1 and retires") {
  DirectedGraph g;
  g.n = 3;
  g.out_edges = {{1, 2}, {0, 2}, {0, 1}};
  const Trace t = broadcast_random(g, 0, derive_phase_params(3, 1.0), {9, 0});
  CHECK(t.completion_round == 1);
  CHECK(t.tx_count[0] == 1);
  // Everyone hears the lone source transmission at once.
  CHECK(t.rounds[0].newly_informed == 2);
}

TEST_CASE("gossip: two-node completion matches the coin-level oracle") {
  DirectedGraph g;
  g.n = 2;
  g.out_edges = {{1}, {0}};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Trace t = gossip_random(g, 2.0, {seed, 0});
    // Node v learns u's originator in the first round where u transmits
    // alone. Completion is when both directions have happened.
    std::optional<std::uint32_t> u_done, v_done;
    for (std::uint32_t r = 1; r <= 512 && !(u_done && v_done); ++r) {
      const bool a = rng::coin(seed, rng::kTagDecision, 0, r, 0.5);
      const bool b = rng::coin(seed, rng::kTagDecision, 1, r, 0.5);
      if (a && !b && !u_done) u_done = r;
      if (b && !a && !v_done) v_done = r;
    }
    REQUIRE(u_done);
    REQUIRE(v_done);
    CHECK(t.completion_round == std::max(*u_done, *v_done));
  }
}

TEST_CASE("gossip completes on a complete graph") {
  const DirectedGraph g = gen_gnp_directed(16, 1.0, 1);
  const Trace t = gossip_random(g, 4.0, {7, 0});
  REQUIRE(t.completion_round.has_value());
  CHECK(*t.completion_round >= 1);
  CHECK(verify_trace(t, g, ProtocolTag::gossip_random).empty());
  // Everyone is active and stays active; nobody is ever uninformed of its
  // own message, so the per-round active count is n.
  for (const RoundRecord& r : t.rounds) CHECK(r.active == 16);
}

TEST_CASE("gossip rejects bad parameters") {
  CHECK_THROWS_AS(GossipRandom(1.0), std::invalid_argument);
  CHECK_THROWS_AS(GossipRandom(4.0, 0.0), std::invalid_argument);
}

TEST_CASE("broadcast-general: point mass k=0 never transmits") {
  DirectedGraph g;
  g.n = 2;
  g.out_edges = {{1}, {0}};
  const Trace t = broadcast_general(g, 0, point_mass(0, 4), 8.0, {5, 0});
  CHECK_FALSE(t.completion_round.has_value());
  CHECK(t.total_transmissions() == 0);
}

TEST_CASE("broadcast-general: two nodes, point mass k=1") {
  DirectedGraph g;
  g.n = 2;
  g.out_edges = {{1}, {0}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Trace t = broadcast_general(g, 0, point_mass(1, 4), 8.0, {seed, 0});
    // The source transmits with probability 1/2 each round of its window;
    // the first lone transmission informs the other node.
    std::optional<std::uint32_t> first_tx;
    BroadcastGeneral probe(point_mass(1, 4), 0);
    probe.begin(g, seed);
    for (std::uint32_t r = 1; r <= probe.activity_window(); ++r) {
      if (rng::coin(seed, rng::kTagDecision, 0, r, 0.5)) {
        first_tx = r;
        break;
      }
    }
    if (first_tx)
      CHECK(t.completion_round == first_tx);
    else
      CHECK_FALSE(t.completion_round.has_value());
  }
}

TEST_CASE("broadcast-general: window retirement bounds the run") {
  const DirectedGraph g = gen_star_dumbbell(4);
  const Trace t = broadcast_general(g, 0, point_mass(2, 4), 2.0, {11, 0});
  BroadcastGeneral probe(point_mass(2, 4), 0, 2.0);
  probe.begin(g, 11);
  const std::uint32_t window = probe.activity_window();
  // Every node's transmissions stop once its window closes.
  for (const RoundRecord& r : t.rounds)
    for (NodeId u : r.transmit_set)
      CHECK(r.round <= t.t_u[u] + window);
  // The run outlives the last window rather than stopping at completion.
  if (t.completion_round)
    CHECK(t.rounds_executed() >= *t.completion_round);
}

TEST_CASE("broadcast-general: shared exponent sequence is run-global") {
  const DirectedGraph g = gen_gnp_directed(32, 0.5, 2);
  BroadcastGeneral proto(alpha_distribution(32, 4), 0);
  proto.begin(g, 123);
  const std::uint32_t a = proto.shared_exponent(5);
  const std::uint32_t b = proto.shared_exponent(5);
  CHECK(a == b);
  CHECK(a <= alpha_distribution(32, 4).max_exponent());
}

TEST_CASE("broadcast-general completes on the lowerbound network") {
  const DirectedGraph g = gen_lowerbound_network(16, 20);
  const ProbabilityTable dist = alpha_distribution(16, 4);
  std::uint32_t completed = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Trace t = broadcast_general(g, 0, dist, 8.0, {seed, 600});
    if (t.completion_round) ++completed;
    CHECK(verify_trace(t, g, ProtocolTag::broadcast_general).empty());
  }
  CHECK(completed >= 4);
}
