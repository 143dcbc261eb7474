#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "radiosim/rng.hpp"

using namespace radiosim;

TEST_CASE("derive is deterministic and sensitive to every index") {
  CHECK(rng::derive(1, 2, 3, 4) == rng::derive(1, 2, 3, 4));
  CHECK(rng::derive(1, 2, 3, 4) != rng::derive(2, 2, 3, 4));
  CHECK(rng::derive(1, 2, 3, 4) != rng::derive(1, 3, 3, 4));
  CHECK(rng::derive(1, 2, 3, 4) != rng::derive(1, 2, 4, 4));
  CHECK(rng::derive(1, 2, 3, 4) != rng::derive(1, 2, 3, 5));
}

TEST_CASE("u01 lies in [0,1)") {
  CHECK(rng::u01(0) == 0.0);
  CHECK(rng::u01(UINT64_MAX) < 1.0);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double x = rng::u01(rng::derive(42, i));
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("coin handles degenerate probabilities") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    CHECK(rng::coin(7, 1, i, 0, 1.0));
    CHECK(rng::coin(7, 1, i, 0, 1.5));
    CHECK_FALSE(rng::coin(7, 1, i, 0, 0.0));
    CHECK_FALSE(rng::coin(7, 1, i, 0, -0.5));
  }
}

TEST_CASE("coin frequency matches p within 4 sigma") {
  const double p = 0.3;
  const int trials = 100000;
  int heads = 0;
  for (int i = 0; i < trials; ++i)
    if (rng::coin(99, rng::kTagDecision, 0, static_cast<std::uint64_t>(i), p))
      ++heads;
  const double freq = static_cast<double>(heads) / trials;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(freq - p) < 4 * sigma);
}

TEST_CASE("Stream is reproducible per seed") {
  rng::Stream a(123), b(123), c(124);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next();
    if (x != b.next()) all_equal = false;
    if (x != c.next()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}
