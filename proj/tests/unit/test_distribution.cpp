#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "radiosim/distribution.hpp"

using namespace radiosim;

namespace {

// Independent oracle: enumerate all 2^m transmit patterns and add the
// probability of the patterns with exactly one transmitter.
double brute_force_inform(std::uint32_t m, const ProbabilityTable& dist) {
  long double total = 0.0L;
  for (std::size_t k = 0; k < dist.mass.size(); ++k) {
    if (dist.mass[k] == 0.0) continue;
    const long double q = k == 0 ? 0.0L : std::exp2l(-(long double)k);
    long double exactly_one = 0.0L;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != 1) continue;
      long double prob = 1.0L;
      for (std::uint32_t i = 0; i < m; ++i)
        prob *= (mask >> i) & 1 ? q : 1.0L - q;
      exactly_one += prob;
    }
    total += dist.mass[k] * exactly_one;
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_CASE("alpha table frozen values for n=2^16, D=2^6") {
  const ProbabilityTable t = alpha_distribution(1u << 16, 1u << 6);
  CHECK(t.lambda == 10.0);
  REQUIRE(t.max_exponent() == 16);
  for (std::uint32_t k = 1; k <= 10; ++k)
    CHECK(t.mass[k] == doctest::Approx(1.0 / 40).epsilon(1e-14));
  for (std::uint32_t k = 11; k <= 16; ++k)
    CHECK(t.mass[k] == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(t.mass[0] == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("alpha-prime table frozen values for n=2^16, D=2^6") {
  const ProbabilityTable t = alpha_prime_distribution(1u << 16, 1u << 6);
  CHECK(t.lambda == 10.0);
  REQUIRE(t.max_exponent() == 16);
  for (std::uint32_t k = 1; k <= 10; ++k)
    CHECK(t.mass[k] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(t.mass[11] == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(t.mass[12] == doctest::Approx(0.0125).epsilon(1e-14));
  CHECK(t.mass[13] == doctest::Approx(0.00625).epsilon(1e-14));
  CHECK(t.mass[14] == doctest::Approx(0.003125).epsilon(1e-14));
  CHECK(t.mass[15] == doctest::Approx(0.003125).epsilon(1e-14));
  CHECK(t.mass[16] == doctest::Approx(0.003125).epsilon(1e-14));
  CHECK(t.mass[0] == doctest::Approx(0.446875).epsilon(1e-12));
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("alpha dominates alpha-prime/2 pointwise") {
  const ProbabilityTable a = alpha_distribution(1u << 16, 1u << 6);
  const ProbabilityTable b = alpha_prime_distribution(1u << 16, 1u << 6);
  for (std::uint32_t k = 1; k <= 16; ++k)
    CHECK(a.mass[k] >= b.mass[k] / 2 - 1e-15);
}

TEST_CASE("lambda override and parameter validation") {
  const ProbabilityTable t = alpha_distribution(1u << 10, 60, 7.5);
  CHECK(t.lambda == 7.5);
  CHECK_NOTHROW(t.validate());

  CHECK_THROWS_AS(alpha_distribution(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(alpha_distribution(1024, 1), std::invalid_argument);
  CHECK_THROWS_AS(alpha_distribution(1024, 2048), std::invalid_argument);
  CHECK_THROWS_AS(alpha_distribution(1024, 60, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(alpha_distribution(1024, 60, 11.0), std::invalid_argument);
  // Default lambda is floor(log2(n/D)); D close to n pushes it below 1.
  CHECK_THROWS_AS(alpha_distribution(1024, 1000), std::invalid_argument);
}

TEST_CASE("point mass") {
  const ProbabilityTable t = point_mass(3, 6);
  REQUIRE(t.mass.size() == 7);
  CHECK(t.mass[3] == 1.0);
  CHECK_NOTHROW(t.validate());
  CHECK_THROWS_AS(point_mass(7, 6), std::invalid_argument);
}

TEST_CASE("validate rejects malformed tables") {
  ProbabilityTable t;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.mass = {0.5, 0.6};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.mass = {1.5, -0.5};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("exact_inform_probability closed-form spot checks") {
  // m=2, point mass k=1: 2 * 1/2 * 1/2 = 1/2.
  CHECK(exact_inform_probability(2, point_mass(1, 4)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // m=4, point mass k=2: 4 * 1/4 * (3/4)^3 = 27/64.
  CHECK(exact_inform_probability(4, point_mass(2, 4)) ==
        doctest::Approx(27.0 / 64).epsilon(1e-12));
  // m=8, point mass k=3: (7/8)^7.
  CHECK(exact_inform_probability(8, point_mass(3, 4)) ==
        doctest::Approx(std::pow(7.0 / 8, 7)).epsilon(1e-12));
  // Silent outcome contributes nothing.
  CHECK(exact_inform_probability(5, point_mass(0, 4)) == 0.0);
  CHECK_THROWS_AS(exact_inform_probability(0, point_mass(1, 4)),
                  std::invalid_argument);
}

TEST_CASE("exact_inform_probability matches 2^m enumeration") {
  const std::vector<ProbabilityTable> dists = {
      point_mass(0, 4), point_mass(1, 4), point_mass(3, 6),
      alpha_distribution(1u << 16, 1u << 6),
      alpha_prime_distribution(1u << 16, 1u << 6)};
  for (const ProbabilityTable& d : dists)
    for (std::uint32_t m = 1; m <= 12; ++m)
      CHECK(exact_inform_probability(m, d) ==
            doctest::Approx(brute_force_inform(m, d)).epsilon(1e-12));
}

TEST_CASE("exponent argmax tracks the active-set size") {
  // For a star with m = 64 transmitting leaves, k = log2 m maximizes the
  // one-round inform probability among point masses.
  double best = -1.0;
  std::uint32_t best_k = 0;
  for (std::uint32_t k = 1; k <= 10; ++k) {
    const double p = exact_inform_probability(64, point_mass(k, 10));
    if (p > best) {
      best = p;
      best_k = k;
    }
  }
  CHECK(best_k == 6);
}

TEST_CASE("sample_sequence is reproducible and frequency-correct") {
  const ProbabilityTable d = alpha_distribution(1u << 16, 1u << 6);
  const auto a = sample_sequence(d, 1000, 5);
  const auto b = sample_sequence(d, 1000, 5);
  const auto c = sample_sequence(d, 1000, 6);
  CHECK(a == b);
  CHECK(a != c);

  const std::size_t draws = 200000;
  const auto big = sample_sequence(d, draws, 7);
  std::vector<std::size_t> counts(d.mass.size(), 0);
  for (std::uint32_t k : big) {
    REQUIRE(k < counts.size());
    ++counts[k];
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double p = d.mass[k];
    const double sigma = std::sqrt(p * (1 - p) / draws);
    const double freq = static_cast<double>(counts[k]) / draws;
    CHECK(std::abs(freq - p) < 4 * sigma + 1e-9);
  }
}

TEST_CASE("distribution file round trip") {
  const ProbabilityTable t = alpha_distribution(1u << 10, 60);
  std::stringstream ss;
  write_distribution(ss, t);
  const ProbabilityTable back = read_distribution(ss);
  CHECK(back.n_param == t.n_param);
  CHECK(back.diameter_param == t.diameter_param);
  CHECK(back.lambda == t.lambda);
  REQUIRE(back.mass.size() == t.mass.size());
  for (std::size_t k = 0; k < t.mass.size(); ++k)
    CHECK(back.mass[k] == t.mass[k]);
}

TEST_CASE("distribution reader rejects bad input") {
  {
    std::stringstream ss("dist v2 16 4 2\n0 1\n");
    CHECK_THROWS_AS(read_distribution(ss), std::runtime_error);
  }
  {
    std::stringstream ss("nope v1 16 4 2\n0 1\n");
    CHECK_THROWS_AS(read_distribution(ss), std::runtime_error);
  }
  {
    std::stringstream ss("dist v1 16 4 2\n1 1\n");
    CHECK_THROWS_AS(read_distribution(ss), std::runtime_error);
  }
}
