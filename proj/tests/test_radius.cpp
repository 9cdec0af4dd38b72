#include <cmath>

#include "doctest.h"
#include "lipmab/radius.hpp"

using namespace lipmab;

TEST_CASE("standard radius matches direct evaluation") {
  CHECK(standard_radius(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(standard_radius(2, 14) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(standard_radius(1, 6) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(standard_radius(3, 5) == doctest::Approx(std::sqrt(24.0 / 7.0)).epsilon(1e-14));
  CHECK(standard_radius(7, 100) ==
        doctest::Approx(std::sqrt(56.0 / 102.0)).epsilon(1e-14));
  // monotone decreasing in n
  double prev = standard_radius(4, 0);
  for (std::uint64_t n = 1; n < 2000; ++n) {
    const double r = standard_radius(4, n);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(standard_radius(4, 1u << 20) < 1e-2);
  CHECK_THROWS_AS(standard_radius(0, 3), std::invalid_argument);
}

TEST_CASE("index is mean plus twice the radius") {
  CHECK(optimistic_index(0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(optimistic_index(0.7, 0.0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(optimistic_index(0.0, standard_radius(1, 0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(optimistic_index(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("max-reward-one radius matches direct evaluation") {
  CHECK(max_reward_one_radius(8.0, 3, 0.75) ==
        doctest::Approx(2.0 + std::sqrt(0.5)).epsilon(1e-14));
  CHECK(max_reward_one_radius(8.0, 7, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_reward_one_radius(9.0, 0, 0.0) ==
        doctest::Approx(9.0 + 3.0).epsilon(1e-14));
  CHECK(max_reward_one_radius(2.0, 5, 0.25) ==
        doctest::Approx(2.0 / 6.0 + std::sqrt(2.0 * 0.75 / 6.0)).epsilon(1e-14));
  CHECK_THROWS_AS(max_reward_one_radius(8.0, 3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(max_reward_one_radius(8.0, 3, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(max_reward_one_radius(0.0, 3, 0.5), std::invalid_argument);
}

TEST_CASE("chernoff radius matches direct evaluation") {
  CHECK(chernoff_radius(4.0, 16, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(chernoff_radius(4.0, 16, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(chernoff_radius(10.0, 100, 0.9) ==
        doctest::Approx(0.1 + std::sqrt(0.09)).epsilon(1e-14));
  CHECK_THROWS_AS(chernoff_radius(4.0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("naive net delta") {
  CHECK(naive_net_delta(4096.0, 2.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(naive_net_delta(16.0, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(naive_net_delta(1024.0, 1.0) ==
        doctest::Approx(std::pow(1024.0, -1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("rule raw values") {
  // unexplored regimes report +inf
  CHECK(std::isinf(raw_radius(JumpRule{1.0}, 3, 1, 0, 0.0)));
  CHECK(std::isinf(raw_radius(SharpPeakRule{0.5, 1.0}, 3, 1, 0, 0.0)));
  CHECK(std::isinf(raw_radius(HeavyTailRule{}, 3, 5, 0, 0.0)));
  CHECK(raw_radius(JumpRule{1.0}, 3, 1, 6, 0.0) == doctest::Approx(0.5));
  CHECK(raw_radius(PointMassRule{1.0}, 2, 1, 2, 0.0) ==
        doctest::Approx(2.0 * 0.5625));
  CHECK(raw_radius(SharpPeakRule{0.5, 1.0}, 1, 1, 4, 0.0) ==
        doctest::Approx(std::pow(0.25, 2.0)));
  CHECK(raw_radius(ScaledGaussianRule{0.5, 8.0}, 2, 1, 14, 0.0) ==
        doctest::Approx(0.5));
  // StochBounded: +inf below the validity floor, the scaled value above it
  const StochBoundedRule sb{2.0, 1.0, 8.0};
  CHECK(std::isinf(raw_radius(sb, 1, 1, 0, 0.0)));          // r would be 2 > rho*sigma^2/2 = 1
  CHECK(raw_radius(sb, 1, 1, 30, 0.0) == doctest::Approx(0.5));
  CHECK(raw_radius(HeavyTailRule{0.5, 1.0}, 1, 16, 4, 0.0) ==
        doctest::Approx(2.0));
}
