#include "radiosim/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace radiosim {

std::uint64_t Trace::total_transmissions() const {
  std::uint64_t total = 0;
  for (std::uint32_t c : tx_count) total += c;
  return total;
}

std::uint32_t Trace::max_tx_per_node() const {
  if (tx_count.empty()) return 0;
  return *std::max_element(tx_count.begin(), tx_count.end());
}

void write_trace_json(std::ostream& os, const Trace& trace) {
  nlohmann::json j;
  j["protocol"] = trace.protocol;
  j["n"] = trace.n;
  j["rounds"] = nlohmann::json::array();
  for (const RoundRecord& r : trace.rounds) {
    j["rounds"].push_back({{"round", r.round},
                           {"active", r.active},
                           {"transmitters", r.transmitters},
                           {"uninformed", r.uninformed},
                           {"newly_informed", r.newly_informed},
                           {"collisions", r.collisions},
                           {"transmit_set", r.transmit_set}});
  }
  j["per_node"] = {{"tx_count", trace.tx_count}, {"t_u", trace.t_u}};
  if (trace.completion_round)
    j["completion_round"] = *trace.completion_round;
  else
    j["completion_round"] = nullptr;
  if (trace.phase1_rounds) j["phase1_rounds"] = *trace.phase1_rounds;
  j["warnings"] = trace.warnings;
  os << j.dump(2) << '\n';
}

Trace read_trace_json(std::istream& is) {
  nlohmann::json j;
  is >> j;
  Trace trace;
  trace.protocol = j.at("protocol").get<std::string>();
  trace.n = j.at("n").get<std::uint32_t>();
  for (const auto& jr : j.at("rounds")) {
    RoundRecord r;
    r.round = jr.at("round").get<std::uint32_t>();
    r.active = jr.at("active").get<std::uint32_t>();
    r.transmitters = jr.at("transmitters").get<std::uint32_t>();
    r.uninformed = jr.at("uninformed").get<std::uint32_t>();
    r.newly_informed = jr.at("newly_informed").get<std::uint32_t>();
    r.collisions = jr.at("collisions").get<std::uint32_t>();
    r.transmit_set = jr.at("transmit_set").get<std::vector<std::uint32_t>>();
    trace.rounds.push_back(std::move(r));
  }
  trace.tx_count =
      j.at("per_node").at("tx_count").get<std::vector<std::uint32_t>>();
  trace.t_u = j.at("per_node").at("t_u").get<std::vector<std::int64_t>>();
  if (!j.at("completion_round").is_null())
    trace.completion_round = j.at("completion_round").get<std::uint32_t>();
  if (j.contains("phase1_rounds"))
    trace.phase1_rounds = j.at("phase1_rounds").get<std::uint32_t>();
  trace.warnings = j.at("warnings").get<std::vector<std::string>>();
  return trace;
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_trace_json(os, trace);
}

Trace read_trace_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_trace_json(is);
}

}  // namespace radiosim
