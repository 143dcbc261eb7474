#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "radiosim/graph.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

enum class Reception : std::uint8_t { silence, received, collision };

/// Per-round channel result under the exactly-one rule: a node receives iff
/// exactly one of its in-neighbours transmitted; two or more collide.
/// Reception here is the raw channel state; the round driver additionally
/// enforces half-duplex (a transmitter never takes a delivery in the round
/// it transmits).
struct RoundOutcome {
  std::vector<Reception> reception;  // size n
  std::vector<NodeId> heard_from;    // valid where reception == received
  std::vector<NodeId> transmitters;
};

RoundOutcome step(const DirectedGraph& g,
                  const std::vector<NodeId>& transmitters);

enum class Status : std::uint8_t { uninformed, active, passive };

struct NodeState {
  Status status = Status::uninformed;
  std::int64_t activation_round = -1;  // t_u; -1 while uninformed
  std::uint32_t tx_count = 0;
};

/// Uniform driver interface for the three protocols. decide/deliver hooks
/// are pure functions of node state plus the node's private random stream;
/// the driver owns the round loop and trace capture.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string_view name() const = 0;
  virtual void begin(const DirectedGraph& g, std::uint64_t seed) = 0;

  // Appends this round's transmitters to out.
  virtual void transmitters(std::uint32_t round, std::vector<NodeId>& out) = 0;

  // Called once per node that received under the exactly-one rule.
  virtual void deliver(NodeId receiver, NodeId sender, std::uint32_t round) = 0;

  virtual void end_round(std::uint32_t round,
                         const std::vector<NodeId>& transmitted) = 0;

  // True once no further round can change protocol state (or the goal is
  // reached). The driver also stops at the round cap.
  virtual bool finished(std::uint32_t rounds_done) const = 0;

  virtual std::uint32_t active_count() const = 0;
  virtual std::uint32_t uninformed_count() const = 0;
  virtual std::uint32_t default_round_cap() const = 0;
  virtual const std::vector<NodeState>& states() const = 0;
  virtual const std::vector<std::string>& warnings() const = 0;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint32_t round_cap = 0;  // 0: use the protocol's default
};

/// Runs rounds 1..cap or until the protocol is finished. Pure function of
/// (g, protocol parameters, cfg.seed): identical inputs give identical
/// traces. A trace with no completion_round signals cap exhaustion.
Trace run(const DirectedGraph& g, Protocol& proto, const RunConfig& cfg);

}  // namespace radiosim
