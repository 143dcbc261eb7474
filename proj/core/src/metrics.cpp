#include "radiosim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace radiosim {

ProtocolTag protocol_tag_from_name(const std::string& name) {
  if (name == "broadcast-random") return ProtocolTag::broadcast_random;
  if (name == "gossip-random") return ProtocolTag::gossip_random;
  if (name == "broadcast-general") return ProtocolTag::broadcast_general;
  throw std::invalid_argument("unknown protocol: " + name);
}

namespace {

void check_generic(const Trace& trace, std::vector<std::string>& out) {
  const std::uint32_t n = trace.n;
  std::uint32_t expected_uninformed = 0;
  bool first = true;
  for (const RoundRecord& r : trace.rounds) {
    if (r.active > n || r.transmitters > n || r.uninformed > n ||
        r.newly_informed > r.uninformed) {
      std::ostringstream msg;
      msg << "round " << r.round << ": count out of range";
      out.push_back(msg.str());
    }
    // N_{t+1} = N_t - newly_informed_t; monotone non-increase follows.
    if (!first && r.uninformed != expected_uninformed) {
      std::ostringstream msg;
      msg << "round " << r.round << ": N_t accounting broken";
      out.push_back(msg.str());
    }
    expected_uninformed = r.uninformed - r.newly_informed;
    first = false;
  }
}

void check_broadcast_random(const Trace& trace,
                            std::vector<std::string>& out) {
  const std::uint32_t n = trace.n;
  const std::uint32_t T = trace.phase1_rounds.value_or(0);

  // (4) disjoint transmit sets / at most one transmission per node.
  constexpr std::uint32_t kNever = UINT32_MAX;
  std::vector<std::uint32_t> first_tx(n, kNever);
  for (const RoundRecord& r : trace.rounds) {
    for (std::uint32_t u : r.transmit_set) {
      if (first_tx[u] != kNever) {
        std::ostringstream msg;
        msg << "node " << u << " transmits in rounds " << first_tx[u]
            << " and " << r.round << " (Q_i disjointness)";
        out.push_back(msg.str());
      } else {
        first_tx[u] = r.round;
      }
    }
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    if (trace.tx_count[u] > 1) {
      std::ostringstream msg;
      msg << "node " << u << " has tx_count " << trace.tx_count[u];
      out.push_back(msg.str());
    }
  }

  // (1) U_t = Q_t as sets during phase 1. Nodes only retire by
  // transmitting, so U_t is reconstructible from t_u and first_tx.
  for (const RoundRecord& r : trace.rounds) {
    if (r.round > T) break;
    std::vector<std::uint32_t> active_set;
    for (std::uint32_t u = 0; u < n; ++u) {
      const bool informed_before =
          trace.t_u[u] >= 0 &&
          trace.t_u[u] <= static_cast<std::int64_t>(r.round) - 1;
      const bool not_yet_transmitted = first_tx[u] >= r.round;
      if (informed_before && not_yet_transmitted) active_set.push_back(u);
    }
    std::vector<std::uint32_t> q = r.transmit_set;
    std::sort(q.begin(), q.end());
    if (active_set != q) {
      std::ostringstream msg;
      msg << "round " << r.round << ": U_t != Q_t in phase 1";
      out.push_back(msg.str());
    }
  }

  // (2) N_t accounting during phase 1, (3) active-set lower bound overall.
  std::uint64_t q_prefix = 0;  // sum of |Q_i| for i < t
  std::uint64_t running_max = 0;  // max over r < t of |U_r| + prefix(r-1)
  for (const RoundRecord& r : trace.rounds) {
    if (r.round <= T) {
      const std::uint64_t informed = q_prefix + r.active;
      if (r.uninformed != n - informed) {
        std::ostringstream msg;
        msg << "round " << r.round << ": N_t identity violated";
        out.push_back(msg.str());
      }
    }
    if (r.active + q_prefix < running_max) {
      std::ostringstream msg;
      msg << "round " << r.round << ": |U_t| dropped below |U_r| - sum|Q_i|";
      out.push_back(msg.str());
    }
    running_max = std::max(running_max, r.active + q_prefix);
    q_prefix += r.transmitters;
  }
}

}  // namespace

std::vector<std::string> verify_trace(const Trace& trace,
                                      const DirectedGraph& g,
                                      ProtocolTag tag) {
  std::vector<std::string> out;
  if (trace.n != g.n) {
    out.push_back("trace/graph node count mismatch");
    return out;
  }
  check_generic(trace, out);
  if (tag == ProtocolTag::broadcast_random)
    check_broadcast_random(trace, out);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  // Lower median for even counts.
  return values[(values.size() - 1) / 2];
}

double percentile95(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("percentile95: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t idx = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(values.size()))) - 1;
  return values[std::min(idx, values.size() - 1)];
}

TrialSummary summarize(const std::vector<Trace>& traces) {
  if (traces.empty()) throw std::invalid_argument("summarize: no traces");
  TrialSummary s;
  s.trials = traces.size();

  std::vector<double> rounds;
  std::vector<double> totals;
  std::uint64_t tx_sum = 0;
  std::uint64_t node_count = 0;
  for (const Trace& t : traces) {
    if (t.completion_round) {
      rounds.push_back(static_cast<double>(*t.completion_round));
    }
    const std::uint64_t total = t.total_transmissions();
    totals.push_back(static_cast<double>(total));
    tx_sum += total;
    node_count += t.n;
    s.tx_max_per_node = std::max(s.tx_max_per_node, t.max_tx_per_node());
    s.total_tx_max = std::max(s.total_tx_max, total);
  }
  s.completion_rate =
      static_cast<double>(rounds.size()) / static_cast<double>(traces.size());
  if (!rounds.empty()) {
    double sum = 0.0;
    for (double r : rounds) sum += r;
    s.rounds_mean = sum / static_cast<double>(rounds.size());
    s.rounds_median = median(rounds);
    s.rounds_p95 = percentile95(rounds);
    s.rounds_max = static_cast<std::uint32_t>(
        *std::max_element(rounds.begin(), rounds.end()));
  }
  s.tx_mean_per_node =
      node_count ? static_cast<double>(tx_sum) / static_cast<double>(node_count)
                 : 0.0;
  double total_sum = 0.0;
  for (double t : totals) total_sum += t;
  s.total_tx_mean = total_sum / static_cast<double>(totals.size());
  s.total_tx_p95 = percentile95(totals);
  return s;
}

PhaseRatioReport phase_ratio_report(const std::vector<Trace>& traces,
                                    const PhaseParams& params) {
  PhaseRatioReport report;
  const std::uint32_t T = params.phase1_rounds;
  for (const Trace& trace : traces) {
    if (trace.rounds.size() < T + 1) continue;  // phase 1 did not finish
    bool usable = true;
    for (std::uint32_t t = 0; t <= T; ++t)
      if (trace.rounds[t].active == 0) usable = false;  // source isolated
    if (!usable) continue;
    for (std::uint32_t t = 0; t < T; ++t) {
      // rounds[t] is round t+1, so this is |U_{t+2}|/|U_{t+1}|.
      report.growth_ratios.push_back(
          static_cast<double>(trace.rounds[t + 1].active) /
          static_cast<double>(trace.rounds[t].active));
    }
    report.phase1_outcome.push_back(
        static_cast<double>(trace.rounds[T].active) /
        std::pow(params.d, static_cast<double>(T)));
  }
  return report;
}

void write_summary_csv_header(std::ostream& os) {
  os << "n,p_or_D,protocol,trials,completion_rate,rounds_mean,rounds_p95,"
        "tx_mean,tx_max,generated_at\n";
}

void write_summary_csv_row(std::ostream& os, std::uint32_t n,
                           const std::string& p_or_d,
                           const std::string& protocol,
                           const TrialSummary& summary,
                           const std::string& timestamp) {
  os << n << ',' << p_or_d << ',' << protocol << ',' << summary.trials << ','
     << summary.completion_rate << ',' << summary.rounds_mean << ','
     << summary.rounds_p95 << ',' << summary.tx_mean_per_node << ','
     << summary.tx_max_per_node << ',' << timestamp << '\n';
}

}  // namespace radiosim
