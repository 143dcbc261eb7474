#include "radiosim/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "radiosim/rng.hpp"

namespace radiosim {

namespace {

double clamp_probability(double p, bool& clamped) {
  if (p > 1.0) {
    clamped = true;
    return 1.0;
  }
  return p;
}

}  // namespace

PhaseParams derive_phase_params(std::uint32_t n, double p, double beta) {
  if (n < 2) throw std::invalid_argument("derive_phase_params: n must be >= 2");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("derive_phase_params: p must be in (0,1]");
  if (!(beta > 0.0))
    throw std::invalid_argument("derive_phase_params: beta must be > 0");

  PhaseParams params;
  params.n = n;
  params.p = p;
  params.beta = beta;
  params.d = static_cast<double>(n) * p;
  if (params.d <= 1.0)
    throw std::invalid_argument(
        "derive_phase_params: np <= 1, graph disconnected w.h.p.");

  const double log_n = std::log2(static_cast<double>(n));
  params.phase1_rounds = std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::floor(log_n / std::log2(params.d))));
  params.phase2_enabled = p <= std::pow(static_cast<double>(n), -0.4);
  params.phase2_prob = clamp_probability(
      1.0 / (std::pow(params.d, params.phase1_rounds) * p),
      params.phase2_clamped);
  params.phase3_prob = clamp_probability(
      params.phase2_enabled ? 1.0 / params.d : 1.0 / (params.d * p),
      params.phase3_clamped);
  params.phase3_rounds =
      static_cast<std::uint32_t>(std::ceil(beta * log_n));
  return params;
}

bool gnp_regime_ok(std::uint32_t n, double p) {
  return p * n / std::log(static_cast<double>(n)) >= 8.0;
}

// ---------------------------------------------------------------------------
// BroadcastRandom

BroadcastRandom::BroadcastRandom(PhaseParams params, NodeId source)
    : params_(params), source_(source) {}

void BroadcastRandom::begin(const DirectedGraph& g, std::uint64_t seed) {
  if (source_ >= g.n)
    throw std::invalid_argument("broadcast-random: source out of range");
  seed_ = seed;
  states_.assign(g.n, NodeState{});
  states_[source_].status = Status::active;
  states_[source_].activation_round = 0;
  active_ = 1;
  uninformed_ = g.n - 1;
  warnings_.clear();
  if (params_.phase2_clamped)
    warnings_.push_back("phase-2 probability clamped to 1");
  if (params_.phase3_clamped)
    warnings_.push_back("phase-3 probability clamped to 1");
  if (!gnp_regime_ok(params_.n, params_.p))
    warnings_.push_back("p*n/ln(n) < 8: below the connectivity regime");
}

double BroadcastRandom::round_probability(std::uint32_t round) const {
  if (round <= params_.phase1_rounds) return 1.0;
  if (params_.phase2_enabled && round == params_.phase1_rounds + 1)
    return params_.phase2_prob;
  return params_.phase3_prob;
}

void BroadcastRandom::transmitters(std::uint32_t round,
                                   std::vector<NodeId>& out) {
  if (round > params_.schedule_length()) return;
  const double p = round_probability(round);
  for (NodeId u = 0; u < states_.size(); ++u) {
    if (states_[u].status != Status::active) continue;
    if (rng::coin(seed_, rng::kTagDecision, u, round, p)) out.push_back(u);
  }
}

void BroadcastRandom::deliver(NodeId receiver, NodeId, std::uint32_t round) {
  NodeState& st = states_[receiver];
  if (st.status != Status::uninformed) return;
  st.status = Status::active;
  st.activation_round = round;
  ++active_;
  --uninformed_;
}

void BroadcastRandom::end_round(std::uint32_t,
                                const std::vector<NodeId>& transmitted) {
  // A node retires when (and only when) it has transmitted; tx_count <= 1
  // follows because passive nodes never reach the transmit set again.
  for (NodeId u : transmitted) {
    NodeState& st = states_[u];
    ++st.tx_count;
    if (st.status == Status::active) {
      st.status = Status::passive;
      --active_;
    }
  }
}

bool BroadcastRandom::finished(std::uint32_t rounds_done) const {
  return uninformed_ == 0 || active_ == 0 ||
         rounds_done >= params_.schedule_length();
}

// ---------------------------------------------------------------------------
// GossipRandom

GossipRandom::GossipRandom(double d, double round_multiplier)
    : d_(d), round_multiplier_(round_multiplier) {
  if (!(d > 1.0)) throw std::invalid_argument("gossip: d must be > 1");
  if (!(round_multiplier > 0.0))
    throw std::invalid_argument("gossip: round multiplier must be > 0");
  send_prob_ = 1.0 / d;
}

void GossipRandom::begin(const DirectedGraph& g, std::uint64_t seed) {
  seed_ = seed;
  n_ = g.n;
  words_ = (n_ + 63) / 64;
  known_.assign(static_cast<std::size_t>(n_) * words_, 0);
  known_count_.assign(n_, 1);
  for (NodeId u = 0; u < n_; ++u)
    known_[u * words_ + u / 64] = 1ULL << (u % 64);
  complete_nodes_ = n_ == 1 ? 1 : 0;
  states_.assign(n_, NodeState{});
  for (auto& st : states_) {
    st.status = Status::active;
    st.activation_round = 0;
  }
  warnings_.clear();
}

void GossipRandom::transmitters(std::uint32_t round, std::vector<NodeId>& out) {
  for (NodeId u = 0; u < n_; ++u)
    if (rng::coin(seed_, rng::kTagDecision, u, round, send_prob_))
      out.push_back(u);
}

void GossipRandom::deliver(NodeId receiver, NodeId sender, std::uint32_t) {
  // Half-duplex keeps this sound within a round: a sender never receives,
  // so its joined set is the round-start value when we union from it.
  std::uint64_t* dst = &known_[static_cast<std::size_t>(receiver) * words_];
  const std::uint64_t* src = &known_[static_cast<std::size_t>(sender) * words_];
  std::uint32_t count = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    dst[w] |= src[w];
    count += static_cast<std::uint32_t>(std::popcount(dst[w]));
  }
  if (known_count_[receiver] < n_ && count == n_) ++complete_nodes_;
  known_count_[receiver] = count;
}

void GossipRandom::end_round(std::uint32_t,
                             const std::vector<NodeId>& transmitted) {
  for (NodeId u : transmitted) ++states_[u].tx_count;
}

bool GossipRandom::finished(std::uint32_t) const {
  return complete_nodes_ == n_;
}

std::uint32_t GossipRandom::default_round_cap() const {
  return static_cast<std::uint32_t>(
      std::ceil(round_multiplier_ * d_ * std::log2(static_cast<double>(n_))));
}

bool GossipRandom::knows(NodeId u, NodeId v) const {
  return (known_[static_cast<std::size_t>(u) * words_ + v / 64] >>
          (v % 64)) & 1ULL;
}

// ---------------------------------------------------------------------------
// BroadcastGeneral

BroadcastGeneral::BroadcastGeneral(ProbabilityTable dist, NodeId source,
                                   double beta, double cap_multiplier)
    : dist_(std::move(dist)),
      source_(source),
      beta_(beta),
      cap_multiplier_(cap_multiplier) {
  if (!(beta > 0.0))
    throw std::invalid_argument("broadcast-general: beta must be > 0");
  dist_.validate();
  cdf_.resize(dist_.mass.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < dist_.mass.size(); ++k) {
    acc += dist_.mass[k];
    cdf_[k] = acc;
  }
  cdf_.back() = 1.0;
}

void BroadcastGeneral::begin(const DirectedGraph& g, std::uint64_t seed) {
  if (source_ >= g.n)
    throw std::invalid_argument("broadcast-general: source out of range");
  seed_ = seed;
  n_ = g.n;
  const double log_n = std::log2(static_cast<double>(std::max(2u, n_)));
  window_ = static_cast<std::uint32_t>(std::ceil(beta_ * log_n * log_n));
  gamma_.clear();
  states_.assign(n_, NodeState{});
  states_[source_].status = Status::active;
  states_[source_].activation_round = 0;
  active_ = 1;
  uninformed_ = n_ - 1;
  warnings_.clear();
}

std::uint32_t BroadcastGeneral::shared_exponent(std::uint32_t round) {
  while (gamma_.size() < round) {
    // One shared sequence per run: all active nodes use the same exponent.
    const double u =
        rng::u01(rng::derive(seed_, rng::kTagSharedSequence, gamma_.size() + 1));
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    gamma_.push_back(static_cast<std::uint32_t>(it - cdf_.begin()));
  }
  return gamma_[round - 1];
}

void BroadcastGeneral::transmitters(std::uint32_t round,
                                    std::vector<NodeId>& out) {
  const std::uint32_t exponent = shared_exponent(round);
  // I_r = 0 is the silent outcome; otherwise transmit with 2^-I_r.
  const double p = exponent == 0 ? 0.0 : std::exp2(-static_cast<double>(exponent));
  for (NodeId u = 0; u < n_; ++u) {
    NodeState& st = states_[u];
    if (st.status != Status::active) continue;
    if (round > st.activation_round + window_) {
      st.status = Status::passive;
      --active_;
      continue;
    }
    if (p > 0.0 && rng::coin(seed_, rng::kTagDecision, u, round, p))
      out.push_back(u);
  }
}

void BroadcastGeneral::deliver(NodeId receiver, NodeId, std::uint32_t round) {
  NodeState& st = states_[receiver];
  if (st.status != Status::uninformed) return;
  st.status = Status::active;
  st.activation_round = round;
  ++active_;
  --uninformed_;
}

void BroadcastGeneral::end_round(std::uint32_t,
                                 const std::vector<NodeId>& transmitted) {
  for (NodeId u : transmitted) ++states_[u].tx_count;
}

bool BroadcastGeneral::finished(std::uint32_t) const {
  // Runs until every informed node has exhausted its activity window, so
  // per-node transmission counts reflect what the oblivious protocol
  // actually spends (nodes cannot observe global completion).
  return active_ == 0;
}

std::uint32_t BroadcastGeneral::default_round_cap() const {
  const std::uint32_t n = n_ ? n_ : dist_.n_param;
  const double log_n = std::log2(static_cast<double>(std::max(2u, n)));
  if (dist_.diameter_param > 0 && dist_.lambda > 0.0)
    return static_cast<std::uint32_t>(std::ceil(
        cap_multiplier_ *
        (dist_.diameter_param * dist_.lambda + log_n * log_n)));
  // Point-mass and custom tables carry no diameter; fall back to a cap that
  // always outlives the last activity window of a completing run.
  return static_cast<std::uint32_t>(
             std::ceil(cap_multiplier_ * beta_ * log_n * log_n)) +
         16;
}

// ---------------------------------------------------------------------------

Trace broadcast_random(const DirectedGraph& g, NodeId source,
                       const PhaseParams& params, const RunConfig& cfg) {
  BroadcastRandom proto(params, source);
  Trace trace = run(g, proto, cfg);
  trace.phase1_rounds = params.phase1_rounds;
  return trace;
}

Trace gossip_random(const DirectedGraph& g, double d, const RunConfig& cfg,
                    double round_multiplier) {
  GossipRandom proto(d, round_multiplier);
  return run(g, proto, cfg);
}

Trace broadcast_general(const DirectedGraph& g, NodeId source,
                        const ProbabilityTable& dist, double beta,
                        const RunConfig& cfg) {
  BroadcastGeneral proto(dist, source, beta);
  return run(g, proto, cfg);
}

}  // namespace radiosim
