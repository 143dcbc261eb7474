#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace radiosim {

/// Distribution over send-probability exponents k in {0..K}. In round r the
/// shared draw I_r selects the exponent every active node uses: it transmits
/// with probability 2^{-I_r} for I_r >= 1 and stays silent for I_r = 0.
/// (The k = 0 outcome carries the leftover mass 1 - sum_{k>=1} alpha_k;
/// treating it as a silent round is what makes the expected per-round send
/// probability O(1/lambda).)
struct ProbabilityTable {
  std::vector<double> mass;  // index k = 0..K
  std::uint32_t n_param = 0;
  std::uint32_t diameter_param = 0;
  double lambda = 0.0;

  std::uint32_t max_exponent() const {
    return static_cast<std::uint32_t>(mass.size()) - 1;
  }

  // Throws std::invalid_argument unless masses are nonnegative and sum to
  // 1 within 1e-12.
  void validate() const;
};

/// The energy-efficient table: alpha_k = 1/(4*lambda) on the low band
/// k <= lambda, then max{1/(2 log n), 2^-(k-lambda)/(2*lambda)} on the decay
/// band up to lambda + log log n, then 1/(2 log n), with alpha_0 the
/// remainder. lambda defaults to floor(log2(n/D)); a real-valued override is
/// accepted for the time/energy tradeoff sweep.
ProbabilityTable alpha_distribution(std::uint32_t n, std::uint32_t diameter,
                                    std::optional<double> lambda_override = {});

/// The comparison baseline: 1/(2*lambda) on the low band, the same decay
/// band, then 1/(2*lambda*log n). Band boundaries match alpha_distribution.
ProbabilityTable alpha_prime_distribution(std::uint32_t n,
                                          std::uint32_t diameter);

/// Degenerate table: all mass on exponent k, domain {0..max_k}.
ProbabilityTable point_mass(std::uint32_t k, std::uint32_t max_k);

/// Probability that a node with m active in-neighbours is informed in one
/// round: sum_k alpha_k * m * q_k * (1-q_k)^(m-1), q_k = 2^-k for k >= 1
/// and q_0 = 0 (silent round). Relative error <= 1e-12.
double exact_inform_probability(std::uint32_t m, const ProbabilityTable& dist);

/// i.i.d. draws of exponents from dist; reproducible per seed.
std::vector<std::uint32_t> sample_sequence(const ProbabilityTable& dist,
                                           std::size_t length,
                                           std::uint64_t seed);

// Table file format: "dist v1 <n> <D> <lambda>" header, then "<k> <alpha_k>"
// lines in decimal.
void write_distribution(std::ostream& os, const ProbabilityTable& dist);
ProbabilityTable read_distribution(std::istream& is);

}  // namespace radiosim
