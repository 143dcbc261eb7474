#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "radiosim/channel.hpp"
#include "radiosim/distribution.hpp"
#include "radiosim/graph.hpp"

namespace radiosim {

/// Parameters of the three-phase random-network broadcast. d = np,
/// T = floor(log2 n / log2 d); phase 2 runs (one round) only when
/// p <= n^{-2/5}, with send probability 1/(d^T p); phase 3 runs
/// ceil(beta*log2 n) rounds at probability 1/d (phase 2 regime) or 1/(dp).
/// Probabilities are clamped into (0,1]; a clamp is reported in the trace.
struct PhaseParams {
  std::uint32_t n = 0;
  double p = 0.0;
  double beta = 8.0;
  double d = 0.0;
  std::uint32_t phase1_rounds = 0;  // T
  bool phase2_enabled = false;
  double phase2_prob = 0.0;
  double phase3_prob = 0.0;
  std::uint32_t phase3_rounds = 0;
  bool phase2_clamped = false;
  bool phase3_clamped = false;

  std::uint32_t schedule_length() const {
    return phase1_rounds + (phase2_enabled ? 1 : 0) + phase3_rounds;
  }
};

PhaseParams derive_phase_params(std::uint32_t n, double p, double beta = 8.0);

/// Warns (returns false) when p*n/ln n < 8, the regime where G(n,p) stops
/// being reliably connected.
bool gnp_regime_ok(std::uint32_t n, double p);

/// Algorithm: phase 1 floods (every active node transmits once, then goes
/// passive); phases 2 and 3 transmit with the PhaseParams probabilities and
/// a node retires when it has transmitted. Hard invariant: tx_count <= 1
/// per node over the whole run.
class BroadcastRandom final : public Protocol {
 public:
  BroadcastRandom(PhaseParams params, NodeId source);

  std::string_view name() const override { return "broadcast-random"; }
  void begin(const DirectedGraph& g, std::uint64_t seed) override;
  void transmitters(std::uint32_t round, std::vector<NodeId>& out) override;
  void deliver(NodeId receiver, NodeId sender, std::uint32_t round) override;
  void end_round(std::uint32_t round,
                 const std::vector<NodeId>& transmitted) override;
  bool finished(std::uint32_t rounds_done) const override;
  std::uint32_t active_count() const override { return active_; }
  std::uint32_t uninformed_count() const override { return uninformed_; }
  std::uint32_t default_round_cap() const override {
    return params_.schedule_length();
  }
  const std::vector<NodeState>& states() const override { return states_; }
  const std::vector<std::string>& warnings() const override {
    return warnings_;
  }

  const PhaseParams& params() const { return params_; }

 private:
  double round_probability(std::uint32_t round) const;

  PhaseParams params_;
  NodeId source_;
  std::uint64_t seed_ = 0;
  std::vector<NodeState> states_;
  std::uint32_t active_ = 0;
  std::uint32_t uninformed_ = 0;
  std::vector<std::string> warnings_;
};

/// Every node transmits its joined message with probability 1/d each round;
/// a receiver unions the sender's originator set into its own. Nodes never
/// go passive. Finished when every node knows every originator.
class GossipRandom final : public Protocol {
 public:
  GossipRandom(double d, double round_multiplier = 128.0);

  std::string_view name() const override { return "gossip-random"; }
  void begin(const DirectedGraph& g, std::uint64_t seed) override;
  void transmitters(std::uint32_t round, std::vector<NodeId>& out) override;
  void deliver(NodeId receiver, NodeId sender, std::uint32_t round) override;
  void end_round(std::uint32_t round,
                 const std::vector<NodeId>& transmitted) override;
  bool finished(std::uint32_t rounds_done) const override;
  std::uint32_t active_count() const override { return n_; }
  std::uint32_t uninformed_count() const override {
    return n_ - complete_nodes_;
  }
  std::uint32_t default_round_cap() const override;
  const std::vector<NodeState>& states() const override { return states_; }
  const std::vector<std::string>& warnings() const override {
    return warnings_;
  }

  // True iff u's joined message already contains v's originator id.
  bool knows(NodeId u, NodeId v) const;

 private:
  double d_;
  double round_multiplier_;
  double send_prob_ = 0.0;
  std::uint32_t n_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> known_;        // n_ x words_ bitset
  std::vector<std::uint32_t> known_count_;  // popcount cache
  std::uint32_t complete_nodes_ = 0;
  std::vector<NodeState> states_;
  std::vector<std::string> warnings_;
};

/// Distribution-driven broadcast: one shared exponent sequence Gamma per
/// run; in round r every active node transmits with probability 2^{-I_r}
/// (I_r = 0 is a silent round) until its activity window of
/// ceil(beta*log2^2 n) rounds expires, then retires. The run ends when no
/// active node remains, so per-node energy reflects the full window the
/// protocol prescribes (nodes cannot observe global completion).
class BroadcastGeneral final : public Protocol {
 public:
  BroadcastGeneral(ProbabilityTable dist, NodeId source, double beta = 8.0,
                   double cap_multiplier = 4.0);

  std::string_view name() const override { return "broadcast-general"; }
  void begin(const DirectedGraph& g, std::uint64_t seed) override;
  void transmitters(std::uint32_t round, std::vector<NodeId>& out) override;
  void deliver(NodeId receiver, NodeId sender, std::uint32_t round) override;
  void end_round(std::uint32_t round,
                 const std::vector<NodeId>& transmitted) override;
  bool finished(std::uint32_t rounds_done) const override;
  std::uint32_t active_count() const override { return active_; }
  std::uint32_t uninformed_count() const override { return uninformed_; }
  std::uint32_t default_round_cap() const override;
  const std::vector<NodeState>& states() const override { return states_; }
  const std::vector<std::string>& warnings() const override {
    return warnings_;
  }

  std::uint32_t activity_window() const { return window_; }
  std::uint32_t shared_exponent(std::uint32_t round);  // I_round, 1-based

 private:
  ProbabilityTable dist_;
  NodeId source_;
  double beta_;
  double cap_multiplier_;
  std::uint32_t n_ = 0;
  std::uint32_t window_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint32_t> gamma_;  // grown lazily
  std::vector<double> cdf_;
  std::vector<NodeState> states_;
  std::uint32_t active_ = 0;
  std::uint32_t uninformed_ = 0;
  std::vector<std::string> warnings_;
};

// Convenience wrappers: construct the protocol, run it, return the trace.
Trace broadcast_random(const DirectedGraph& g, NodeId source,
                       const PhaseParams& params, const RunConfig& cfg);
Trace gossip_random(const DirectedGraph& g, double d, const RunConfig& cfg,
                    double round_multiplier = 128.0);
Trace broadcast_general(const DirectedGraph& g, NodeId source,
                        const ProbabilityTable& dist, double beta,
                        const RunConfig& cfg);

}  // namespace radiosim
