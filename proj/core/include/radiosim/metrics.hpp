#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radiosim/graph.hpp"
#include "radiosim/protocols.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

enum class ProtocolTag { broadcast_random, gossip_random, broadcast_general };

ProtocolTag protocol_tag_from_name(const std::string& name);

/// Checks the trace identities. For broadcast-random:
///   (1) U_t = Q_t as sets for t in [1,T]
///   (2) N_t = n - (sum_{i<t} |Q_i| + |U_t|) for t in [1,T]
///   (3) |U_t| >= |U_r| - sum_{i=r}^{t-1} |Q_i| for all r < t
///   (4) transmit sets are pairwise disjoint (each node transmits <= once)
/// For the other protocols only the generic checks apply (counts bounded by
/// n, N_t non-increasing, newly-informed accounting). Violations are data,
/// returned as human-readable strings; empty means clean.
std::vector<std::string> verify_trace(const Trace& trace,
                                      const DirectedGraph& g,
                                      ProtocolTag tag);

struct TrialSummary {
  std::size_t trials = 0;
  double completion_rate = 0.0;
  // Round statistics over completed trials.
  double rounds_mean = 0.0;
  double rounds_median = 0.0;  // lower median
  double rounds_p95 = 0.0;
  std::uint32_t rounds_max = 0;
  // Per-node transmission statistics over all trials.
  double tx_mean_per_node = 0.0;
  std::uint32_t tx_max_per_node = 0;
  // Total transmissions per trial.
  double total_tx_mean = 0.0;
  double total_tx_p95 = 0.0;
  std::uint64_t total_tx_max = 0;
};

/// Exact (sort-based) order statistics; permutation invariant. Rejects an
/// empty input.
TrialSummary summarize(const std::vector<Trace>& traces);

struct PhaseRatioReport {
  // |U_{t+1}|/|U_t| for phase-1 rounds, pooled over traces.
  std::vector<double> growth_ratios;
  // |U_{T+1}|/d^T per trace.
  std::vector<double> phase1_outcome;
};

/// Phase-1 growth ratios for broadcast-random traces. Trials where some
/// |U_t| is zero are skipped.
PhaseRatioReport phase_ratio_report(const std::vector<Trace>& traces,
                                    const PhaseParams& params);

double median(std::vector<double> values);       // lower median
double percentile95(std::vector<double> values); // exact, sort-based

// Summary CSV row: n, p_or_D, protocol, trials, completion_rate,
// rounds_mean, rounds_p95, tx_mean, tx_max, generated_at (blank when
// timestamps are suppressed).
void write_summary_csv_header(std::ostream& os);
void write_summary_csv_row(std::ostream& os, std::uint32_t n,
                           const std::string& p_or_d,
                           const std::string& protocol,
                           const TrialSummary& summary,
                           const std::string& timestamp);

}  // namespace radiosim
