#include "radiosim/channel.hpp"

#include <stdexcept>

namespace radiosim {

RoundOutcome step(const DirectedGraph& g,
                  const std::vector<NodeId>& transmitters) {
  RoundOutcome out;
  out.reception.assign(g.n, Reception::silence);
  out.heard_from.assign(g.n, 0);
  out.transmitters = transmitters;

  // 0 = silence, 1 = single transmitter heard, 2 = collision.
  std::vector<std::uint8_t> hits(g.n, 0);
  for (NodeId u : transmitters) {
    if (u >= g.n) throw std::invalid_argument("step: transmitter out of range");
    for (NodeId v : g.out_edges[u]) {
      if (hits[v] == 0) {
        hits[v] = 1;
        out.heard_from[v] = u;
      } else {
        hits[v] = 2;
      }
    }
  }
  for (NodeId v = 0; v < g.n; ++v) {
    if (hits[v] == 1)
      out.reception[v] = Reception::received;
    else if (hits[v] == 2)
      out.reception[v] = Reception::collision;
  }
  return out;
}

Trace run(const DirectedGraph& g, Protocol& proto, const RunConfig& cfg) {
  proto.begin(g, cfg.seed);
  const std::uint32_t cap =
      cfg.round_cap ? cfg.round_cap : proto.default_round_cap();
  if (cap == 0) throw std::invalid_argument("run: round cap must be >= 1");

  Trace trace;
  trace.protocol = std::string(proto.name());
  trace.n = g.n;

  std::vector<NodeId> tx;
  std::vector<std::uint8_t> is_tx(g.n, 0);
  if (proto.uninformed_count() == 0) trace.completion_round = 0;

  for (std::uint32_t round = 1; round <= cap && !proto.finished(round - 1);
       ++round) {
    RoundRecord rec;
    rec.round = round;
    rec.active = proto.active_count();
    rec.uninformed = proto.uninformed_count();

    tx.clear();
    proto.transmitters(round, tx);
    const RoundOutcome outcome = step(g, tx);

    for (NodeId u : tx) is_tx[u] = 1;
    for (NodeId v = 0; v < g.n; ++v) {
      // Half-duplex: a transmitter never takes a delivery this round.
      if (outcome.reception[v] == Reception::received && !is_tx[v])
        proto.deliver(v, outcome.heard_from[v], round);
      if (outcome.reception[v] == Reception::collision) ++rec.collisions;
    }
    for (NodeId u : tx) is_tx[u] = 0;

    proto.end_round(round, tx);

    rec.transmitters = static_cast<std::uint32_t>(tx.size());
    rec.newly_informed = rec.uninformed - proto.uninformed_count();
    rec.transmit_set = tx;
    trace.rounds.push_back(std::move(rec));

    if (!trace.completion_round && proto.uninformed_count() == 0)
      trace.completion_round = round;
  }

  const auto& st = proto.states();
  trace.tx_count.resize(g.n);
  trace.t_u.resize(g.n);
  for (NodeId v = 0; v < g.n; ++v) {
    trace.tx_count[v] = st[v].tx_count;
    trace.t_u[v] = st[v].activation_round;
  }
  trace.warnings = proto.warnings();
  return trace;
}

}  // namespace radiosim
