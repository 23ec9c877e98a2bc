#include <doctest.h>

#include <cmath>

#include "hypervol/bounds.hpp"
#include "oracle.hpp"

using namespace hypervol;

TEST_SUITE("bounds") {

TEST_CASE("lower bound") {
  CHECK(lower_bound(SimplexParams::from_angle(3, 0.0)) == 0.0);
  CHECK(lower_bound(SimplexParams::from_complement(3, 0.01)) ==
        doctest::Approx(0.018015665114931930258).epsilon(1e-13));
  CHECK(lower_bound(SimplexParams::from_angle(4, 0.7)) ==
        doctest::Approx(0.087893118320739295341).epsilon(1e-13));
  CHECK(lower_bound(SimplexParams::from_angle(3, half_pi)) == 0.0);
  CHECK_THROWS_AS(lower_bound(SimplexParams::from_angle(2, 0.5)), DomainError);

  for (int n = 3; n <= 8; ++n) {
    for (double t = 0.05; t < 1.5708; t += 0.1) {
      const auto p = SimplexParams::from_angle(n, t);
      const double a = lower_bound(p), b = lower_bound_from_ladder(p);
      CHECK(std::abs(a - b) <= 1e-12 * a);
      CHECK(a <= upper_bound(p));
    }
  }
  // The variant without the square root differs and breaks down near pi/2.
  const auto p = SimplexParams::from_angle(3, 0.7);
  CHECK(lower_bound(p, LowerBoundForm::no_square_root) != lower_bound(p));
  CHECK_THROWS_AS(lower_bound(SimplexParams::from_complement(3, 1e-3), LowerBoundForm::no_square_root),
                  DomainError);
}

TEST_CASE("upper bound") {
  CHECK(upper_bound(SimplexParams::from_angle(3, 0.0)) == 0.0);
  CHECK(upper_bound(SimplexParams::from_sine(3, 0.5)) ==
        doctest::Approx(0.40559440559440559441).epsilon(1e-14));
  for (int n = 3; n <= 8; ++n) {
    CHECK(upper_bound(SimplexParams::from_angle(n, half_pi)) == 1.0 / (n - 1));
    CHECK(std::abs(upper_bound(SimplexParams::from_complement(n, 1e-4)) - 1.0 / (n - 1)) <= 1e-6);
    double prev = -1.0;
    for (double t = 0.0; t <= half_pi; t += half_pi / 40) {
      const double u = upper_bound(SimplexParams::from_angle(n, t));
      if (t < 1.2) CHECK(u > prev);
      CHECK(u >= prev);
      prev = u;
    }
  }
}

TEST_CASE("reference bounds") {
  CHECK(hm_bounds(3).lo == 0.25);
  CHECK(hm_bounds(3).hi == 0.5);
  CHECK(hm_bounds(2).lo == 0.0);
  CHECK(hm_bounds(2).hi == 1.0);
  CHECK(hm_bounds(10).lo == doctest::Approx(8.0 / 81));
  CHECK(hm_bounds(10).hi == doctest::Approx(1.0 / 9));
  CHECK_THROWS_AS(hm_bounds(1), DomainError);
  CHECK(euclidean_limit_ratio(3) == doctest::Approx(4.0 / 9));
  CHECK(euclidean_limit_ratio(2) == 0.75);
  for (int n = 2; n < 30; ++n) CHECK(euclidean_limit_ratio(n + 1) < euclidean_limit_ratio(n));
  const auto gb = growth_bounds(SimplexParams::from_angle(4, 1.0));
  CHECK(gb.hm_lower <= gb.hm_upper);
  CHECK(gb.lower <= gb.upper);
}

TEST_CASE("growth ratio") {
  QuadratureConfig cfg;
  const auto ideal = growth_ratio(SimplexParams::from_angle(3, half_pi), cfg);
  CHECK(std::abs(ideal.value - oracle::ideal_n3_ratio) <= 1e-9);
  CHECK_THROWS_AS(growth_ratio(SimplexParams::from_angle(3, 0.0), cfg), DomainError);
  CHECK_THROWS_AS(growth_ratio(SimplexParams::from_angle(2, 1.0), cfg), DomainError);
  for (int n : {3, 4}) {
    const auto p = SimplexParams::from_angle(n, 0.01);
    const double r = growth_ratio(p, cfg).value / std::atanh(p.sin_t());
    CHECK(std::abs(r - euclidean_limit_ratio(n)) <= 0.01 * euclidean_limit_ratio(n));
  }
  for (int n : {3, 4}) {
    for (double t : {0.2, 0.9, 1.5}) {
      const auto p = SimplexParams::from_angle(n, t);
      const auto r = growth_ratio(p, cfg);
      CHECK(lower_bound(p) <= r.value + r.error_estimate);
      CHECK(r.value <= upper_bound(p) + r.error_estimate);
    }
  }
}

TEST_CASE("limit audit") {
  const auto a = limit_audit(3, default_audit_sequence());
  REQUIRE(a.rows.size() == 6);
  CHECK(a.rows[0].product == doctest::Approx(0.29899094514991952516).epsilon(1e-12));
  CHECK(a.rows[2].product == doctest::Approx(0.0076009011093917448064).epsilon(1e-9));
  CHECK(a.monotone_decreasing);
  CHECK(std::abs(a.fitted_limit) < 1e-2);
  CHECK(std::abs(a.fitted_bound_limit) < 1e-2);
  CHECK(a.claimed_limit == 1.0);
  const double backwards[] = {1.5, 1.4, 1.3};
  CHECK_THROWS_AS(limit_audit(3, backwards), DomainError);
  const double short_seq[] = {1.5, 1.55};
  CHECK_THROWS_AS(limit_audit(3, short_seq), DomainError);
}

}
