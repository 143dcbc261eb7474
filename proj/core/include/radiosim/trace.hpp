#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace radiosim {

/// One executed round. Counts are taken at round start (active = |U_t|,
/// uninformed = N_t); transmitters = |Q_t|.
struct RoundRecord {
  std::uint32_t round = 0;
  std::uint32_t active = 0;
  std::uint32_t transmitters = 0;
  std::uint32_t uninformed = 0;
  std::uint32_t newly_informed = 0;
  std::uint32_t collisions = 0;
  std::vector<std::uint32_t> transmit_set;
};

struct Trace {
  std::string protocol;
  std::uint32_t n = 0;
  std::vector<RoundRecord> rounds;
  std::vector<std::uint32_t> tx_count;    // per node
  std::vector<std::int64_t> t_u;          // per node activation round, -1 none
  std::optional<std::uint32_t> completion_round;
  std::optional<std::uint32_t> phase1_rounds;  // set by broadcast-random
  std::vector<std::string> warnings;

  std::uint64_t total_transmissions() const;
  std::uint32_t max_tx_per_node() const;
  std::uint32_t rounds_executed() const {
    return rounds.empty() ? 0 : rounds.back().round;
  }
};

// JSON serialization (stable field names; lossless round trip).
void write_trace_json(std::ostream& os, const Trace& trace);
Trace read_trace_json(std::istream& is);

void write_trace_file(const std::string& path, const Trace& trace);
Trace read_trace_file(const std::string& path);

}  // namespace radiosim
