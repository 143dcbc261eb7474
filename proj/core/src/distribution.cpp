#include "radiosim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "radiosim/rng.hpp"

namespace radiosim {

namespace {

double log2_of(std::uint32_t n) { return std::log2(static_cast<double>(n)); }

// Shared band layout for alpha and alpha'. Ranges follow the baseline
// table; upper ends use ceilings so the table is well defined for every n.
struct Bands {
  std::uint32_t log_n;       // K, the top exponent
  std::uint32_t low_end;     // floor(lambda)
  std::uint32_t decay_end;   // min(ceil(lambda + log2 log2 n), K)
};

Bands make_bands(std::uint32_t n, double lambda) {
  Bands b;
  b.log_n = static_cast<std::uint32_t>(std::ceil(log2_of(n)));
  b.low_end = static_cast<std::uint32_t>(std::floor(lambda));
  const double decay = lambda + std::log2(log2_of(n));
  b.decay_end = std::min<std::uint32_t>(
      static_cast<std::uint32_t>(std::ceil(decay)), b.log_n);
  return b;
}

double resolve_lambda(std::uint32_t n, std::uint32_t diameter,
                      std::optional<double> lambda_override) {
  if (n < 4) throw std::invalid_argument("distribution: n too small");
  if (diameter < 2 || diameter > n)
    throw std::invalid_argument("distribution: need 2 <= D <= n");
  double lambda = lambda_override
                      ? *lambda_override
                      : std::floor(std::log2(static_cast<double>(n) / diameter));
  if (lambda < 1.0)
    throw std::invalid_argument("distribution: lambda must be >= 1");
  if (lambda > log2_of(n))
    throw std::invalid_argument("distribution: lambda must be <= log2 n");
  return lambda;
}

void finish_table(ProbabilityTable& t) {
  double sum = 0.0;
  for (std::size_t k = 1; k < t.mass.size(); ++k) sum += t.mass[k];
  if (sum > 1.0)
    throw std::invalid_argument(
        "distribution: parameters leave negative mass at k=0");
  t.mass[0] = 1.0 - sum;
}

}  // namespace

void ProbabilityTable::validate() const {
  if (mass.empty()) throw std::invalid_argument("distribution: empty table");
  double sum = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0)) throw std::invalid_argument("distribution: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("distribution: masses do not sum to 1");
}

ProbabilityTable alpha_distribution(std::uint32_t n, std::uint32_t diameter,
                                    std::optional<double> lambda_override) {
  const double lambda = resolve_lambda(n, diameter, lambda_override);
  const Bands b = make_bands(n, lambda);
  ProbabilityTable t;
  t.n_param = n;
  t.diameter_param = diameter;
  t.lambda = lambda;
  t.mass.assign(b.log_n + 1, 0.0);
  const double floor_mass = 1.0 / (2.0 * b.log_n);
  for (std::uint32_t k = 1; k <= b.log_n; ++k) {
    if (k <= b.low_end) {
      t.mass[k] = 1.0 / (4.0 * lambda);
    } else if (k <= b.decay_end) {
      t.mass[k] = std::max(floor_mass, std::exp2(-(k - lambda)) / (2.0 * lambda));
    } else {
      t.mass[k] = floor_mass;
    }
  }
  finish_table(t);
  return t;
}

ProbabilityTable alpha_prime_distribution(std::uint32_t n,
                                          std::uint32_t diameter) {
  const double lambda = resolve_lambda(n, diameter, std::nullopt);
  const Bands b = make_bands(n, lambda);
  ProbabilityTable t;
  t.n_param = n;
  t.diameter_param = diameter;
  t.lambda = lambda;
  t.mass.assign(b.log_n + 1, 0.0);
  for (std::uint32_t k = 1; k <= b.log_n; ++k) {
    if (k <= b.low_end) {
      t.mass[k] = 1.0 / (2.0 * lambda);
    } else if (k <= b.decay_end) {
      t.mass[k] = std::exp2(-(k - lambda)) / (2.0 * lambda);
    } else {
      t.mass[k] = 1.0 / (2.0 * lambda * b.log_n);
    }
  }
  finish_table(t);
  return t;
}

ProbabilityTable point_mass(std::uint32_t k, std::uint32_t max_k) {
  if (k > max_k) throw std::invalid_argument("point_mass: k > max_k");
  ProbabilityTable t;
  t.mass.assign(max_k + 1, 0.0);
  t.mass[k] = 1.0;
  return t;
}

double exact_inform_probability(std::uint32_t m, const ProbabilityTable& dist) {
  if (m < 1) throw std::invalid_argument("exact_inform_probability: m >= 1");
  long double total = 0.0L;
  for (std::size_t k = 1; k < dist.mass.size(); ++k) {
    if (dist.mass[k] == 0.0) continue;
    const long double q = std::exp2(-static_cast<long double>(k));
    total += static_cast<long double>(dist.mass[k]) * m * q *
             std::pow(1.0L - q, static_cast<long double>(m) - 1.0L);
  }
  return static_cast<double>(total);
}

std::vector<std::uint32_t> sample_sequence(const ProbabilityTable& dist,
                                           std::size_t length,
                                           std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("sample_sequence: length >= 1");
  dist.validate();
  std::vector<double> cdf(dist.mass.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.mass.size(); ++k) {
    acc += dist.mass[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;

  rng::Stream stream(rng::derive(seed, rng::kTagSharedSequence));
  std::vector<std::uint32_t> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double u = stream.next_u01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[i] = static_cast<std::uint32_t>(it - cdf.begin());
  }
  return out;
}

void write_distribution(std::ostream& os, const ProbabilityTable& dist) {
  os << "dist v1 " << dist.n_param << ' ' << dist.diameter_param << ' '
     << std::setprecision(17) << dist.lambda << '\n';
  for (std::size_t k = 0; k < dist.mass.size(); ++k)
    os << k << ' ' << std::setprecision(17) << dist.mass[k] << '\n';
}

ProbabilityTable read_distribution(std::istream& is) {
  std::string magic, version;
  ProbabilityTable t;
  if (!(is >> magic >> version >> t.n_param >> t.diameter_param >> t.lambda) ||
      magic != "dist")
    throw std::runtime_error("dist file: bad header");
  if (version != "v1")
    throw std::runtime_error("dist file: unsupported version " + version);
  std::size_t k = 0;
  double mass = 0.0;
  std::size_t expect = 0;
  while (is >> k >> mass) {
    if (k != expect) throw std::runtime_error("dist file: out-of-order row");
    t.mass.push_back(mass);
    ++expect;
  }
  t.validate();
  return t;
}

}  // namespace radiosim
