#include <doctest.h>

#include <cmath>
#include <random>

#include "hypervol/volume_forms.hpp"
#include "oracle.hpp"

using namespace hypervol;

TEST_SUITE("volume_forms") {

TEST_CASE("cosh power antiderivative") {
  CHECK(cosh_power_antiderivative(1, 1.0) == doctest::Approx(1.1752011936438014569).epsilon(1e-15));
  CHECK(cosh_power_antiderivative(2, 1.0) == doctest::Approx(1.4067151019617546919).epsilon(1e-15));
  CHECK(cosh_power_antiderivative(5, 2.0) == doctest::Approx(160.94398591476755687).epsilon(1e-14));
  CHECK(cosh_power_antiderivative(12, 2.0) == doctest::Approx(700511.60186730988068).epsilon(1e-14));
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  for (int m = 0; m <= 12; ++m) {
    CHECK(cosh_power_antiderivative(m, 0.0) == 0.0);
    const auto q = integrate_adaptive([m](double x) { return std::pow(std::cosh(x), m); }, 0, 2, cfg);
    const double f = cosh_power_antiderivative(m, 2.0);
    CHECK(std::abs(f - q.value) / q.value <= 1e-13);
    // F_m' = cosh^m by central difference.
    const double h = 1e-5, x = 0.8;
    const double deriv = (cosh_power_antiderivative(m, x + h) - cosh_power_antiderivative(m, x - h)) / (2 * h);
    CHECK(deriv == doctest::Approx(std::pow(std::cosh(x), m)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(cosh_power_antiderivative(-1, 1.0), DomainError);
}

TEST_CASE("alpha chain") {
  const auto chain = alpha_chain(ladder(SimplexParams::from_sine(3, 0.6)));
  CHECK(chain.ratio[1] == doctest::Approx(std::sqrt(11.0) / 5).epsilon(1e-14));
  CHECK(chain(2, 0.5) == doctest::Approx(0.36050130597308405626).epsilon(1e-14));
  CHECK_THROWS_AS(chain(2, 5.0), DomainError);
  CHECK_THROWS_AS(alpha_chain(ladder(SimplexParams::from_angle(3, 0.0))), DomainError);

  for (int n = 3; n <= 8; ++n) {
    for (double t : {0.2, 0.8, 1.3, 1.55}) {
      const auto p = SimplexParams::from_angle(n, t);
      const auto c = alpha_chain(ladder(p));
      const double s = p.sin_t();
      const double expect =
          std::sqrt(double(n - 1) / (n + 1)) * std::sqrt(1.0 - 2 * s * s / (n * (n - 1.0)));
      CHECK(std::abs(c.ratio[n - 2] - expect) <= 1e-12);
      for (int k = 1; k < n; ++k) {
        CHECK(c(k, 0.0) == 0.0);
        const double top = c.domain[k - 1];
        CHECK(c(k, 0.5 * top) < c(k, top));
        CHECK(c(k, 0.25 * top) < c(k, 0.5 * top));
      }
      CHECK(c(n, 0.3) == c.top);
    }
  }
  // alpha_1 written from the face side matches the direct form.
  const auto c = alpha_chain(ladder(SimplexParams::from_angle(4, 1.0)));
  CHECK(c.first_from_face(c.top - 0.3) == doctest::Approx(c(1, 0.3)).epsilon(1e-12));
}

TEST_CASE("volumes vanish at t = 0") {
  QuadratureConfig cfg;
  for (int n = 2; n <= 5; ++n) {
    const auto p = SimplexParams::from_angle(n, 0.0);
    CHECK(volume_orthoscheme(p, cfg).value == 0.0);
    CHECK(volume_projective(p, cfg).value == 0.0);
    if (n >= 3) CHECK(facet_volume_projective(p, cfg).value == 0.0);
    CHECK_THROWS_AS(volume_halfspace(p, cfg), DomainError);
  }
}

TEST_CASE("regular triangle areas") {
  QuadratureConfig cfg;
  for (const auto& tc : oracle::triangle_cases) {
    const auto p = SimplexParams::from_angle(2, tc.t);
    CAPTURE(tc.t);
    CHECK(std::abs(volume_orthoscheme(p, cfg).value - tc.area) <= 1e-10);
    CHECK(std::abs(volume_projective(p, cfg).value - tc.area) <= 1e-10);
    CHECK(std::abs(volume_halfspace(p, cfg).value - tc.area) <= 1e-10);
    CHECK(oracle::triangle_area(std::atanh(p.sin_t())) == doctest::Approx(tc.area).epsilon(1e-13));
  }
  const auto p35 = SimplexParams::from_sine(2, 0.6);
  CHECK(volume_projective(p35, cfg).value == doctest::Approx(oracle::triangle_sin_3_5).epsilon(1e-12));
  // Ideal triangle.
  CHECK(volume_orthoscheme(SimplexParams::from_angle(2, half_pi), cfg).value ==
        doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(volume_projective(SimplexParams::from_angle(2, half_pi), cfg).value ==
        doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("ideal tetrahedron") {
  QuadratureConfig cfg;
  CHECK(3 * oracle::lobachevsky(M_PI / 3) == doctest::Approx(oracle::ideal_tetrahedron).epsilon(1e-14));
  const auto p = SimplexParams::from_angle(3, half_pi);
  CHECK(std::abs(volume_projective(p, cfg).value - oracle::ideal_tetrahedron) <= 1e-9);
  CHECK(std::abs(volume_orthoscheme(p, cfg).value - oracle::ideal_tetrahedron) <= 1e-9);
  const auto near = volume_halfspace(SimplexParams::from_complement(3, 1e-4), cfg);
  CHECK(std::abs(near.value - oracle::ideal_tetrahedron) <= 1e-6);
  CHECK_THROWS_AS(volume_halfspace(SimplexParams::from_complement(3, 1e-7), cfg), DomainError);
  CHECK_THROWS_AS(volume_halfspace(p, cfg), DomainError);
  const double eps[] = {1e-2, 1e-3, 1e-4};
  const auto ex = volume_halfspace_extrapolated(3, eps, cfg);
  CHECK(std::abs(ex.value - oracle::ideal_tetrahedron) <= 1e-6);
}

TEST_CASE("facet volumes") {
  QuadratureConfig cfg;
  CHECK(facet_volume_projective(SimplexParams::from_angle(3, half_pi), cfg).value ==
        doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(facet_volume_projective(SimplexParams::from_sine(3, 0.6), cfg).value ==
        doctest::Approx(oracle::facet_n3_sin_3_5).epsilon(1e-12));
  CHECK_THROWS_AS(facet_volume_projective(SimplexParams::from_angle(2, 1.0), cfg), DomainError);
  for (int n = 3; n <= 5; ++n) {
    for (double t : {0.3, 0.8, 1.3}) {
      const auto p = SimplexParams::from_angle(n, t);
      const double sub = ladder(p).tanh_r[n - 2];
      const double f = facet_volume_projective(p, cfg).value;
      const double g = volume_projective(SimplexParams::from_sine(n - 1, sub), cfg).value;
      CHECK(std::abs(f - g) / g <= 1e-8);
    }
  }
}

TEST_CASE("volume forms increase with t") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  for (int n = 2; n <= 4; ++n) {
    double prev_p = 0.0, prev_o = 0.0, prev_h = 0.0;
    for (double t = 0.15; t < 1.56; t += 0.2) {
      const auto p = SimplexParams::from_angle(n, t);
      const double vp = volume_projective(p, cfg).value;
      const double vo = volume_orthoscheme(p, cfg).value;
      const double vh = volume_halfspace(p, cfg).value;
      CHECK(vp > prev_p);
      CHECK(vo > prev_o);
      CHECK(vh > prev_h);
      prev_p = vp;
      prev_o = vo;
      prev_h = vh;
    }
  }
}

TEST_CASE("orthoscheme dimension cap") {
  QuadratureConfig cfg;
  CHECK_THROWS_AS(volume_orthoscheme(SimplexParams::from_angle(13, 0.5), cfg), CapabilityError);
}

TEST_CASE("extended precision half-space") {
  QuadratureConfig cfg, ext;
  ext.precision = Precision::extended;
  const auto p = SimplexParams::from_angle(3, 1.2);
  CHECK(volume_halfspace(p, ext).value == doctest::Approx(volume_halfspace(p, cfg).value).epsilon(1e-11));
}

TEST_CASE("z bounds of the half-space image") {
  const auto emb = halfspace_embedding(SimplexParams::from_sine(3, 0.5));
  const auto at0 = zn_bounds(emb, Point::Zero(2));
  CHECK(at0.lo == 1.0);
  CHECK(at0.hi == doctest::Approx(2.0493901531919196766).epsilon(1e-15));
  for (const auto& v : emb.v) {
    const auto zb = zn_bounds(emb, v);
    CHECK(zb.lo * zb.lo == doctest::Approx(0.77142857142857142857).epsilon(1e-13));
    CHECK(std::abs(zb.hi * zb.hi - zb.lo * zb.lo) < 1e-13);
  }
  CHECK_THROWS_AS(zn_bounds(emb, 1.5 * emb.v[0]), DomainError);

  std::mt19937_64 rng(7);
  std::exponential_distribution<double> expo(1.0);
  for (int n : {3, 4, 6}) {
    for (double t : {0.5, 1.2, 1.5}) {
      const auto e = halfspace_embedding(SimplexParams::from_angle(n, t));
      const double g2 = e.gamma * e.gamma;
      for (int it = 0; it < 1000; ++it) {
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) total += (x = expo(rng));
        Point v = Point::Zero(n - 1);
        for (int k = 0; k < n; ++k) v += (w[k] / total) * e.v[k];
        const auto zb = zn_bounds(e, v);
        REQUIRE(zb.lo < zb.hi);
        // Upper boundary lies on the facet sphere of the sub-simplex.
        const auto loc = locate_subsimplex(e, v);
        const double on = (v - e.centers[loc.index]).squaredNorm() + zb.hi * zb.hi;
        CHECK(std::abs(on - g2) <= 1e-11 * g2);
        for (double z : {zb.lo, 0.5 * (zb.lo + zb.hi), zb.hi}) {
          CHECK(v.squaredNorm() + z * z >= 1.0 - 1e-12);
          for (int i = 0; i < n; ++i) {
            CHECK((v - e.centers[i]).squaredNorm() + z * z <= g2 * (1 + 1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("general half-space formula") {
  QuadratureConfig cfg;
  for (int n : {2, 3, 4}) {
    for (double t : {0.4, 1.1}) {
      const auto p = SimplexParams::from_angle(n, t);
      const auto lad = ladder(p);
      QuasiRegularParams q{n, lad.r[n - 1], lad.d[n - 1], n >= 2 ? lad.r[n - 2] : 0.0};
      const double g = volume_halfspace_general(q, cfg).value;
      const double h = volume_halfspace(p, cfg).value;
      CHECK(std::abs(g - h) / h <= 1e-9);
      // The printed upper height is larger, so its volume is too.
      CHECK(volume_halfspace_general(q, cfg, UpperHeightForm::as_printed).value > g);
    }
  }
  QuasiRegularParams q{3, 0.8, 0.3, 0.5};
  double prev = 0.0;
  for (double r : {0.3, 0.6, 1.0, 2.0}) {
    q.r = r;
    const double v = volume_halfspace_general(q, cfg).value;
    CHECK(v > prev);
    prev = v;
  }
  q.facet_circumradius = 0.0;
  CHECK(volume_halfspace_general(q, cfg).value == 0.0);
  q = {3, 0.2, 0.3, 0.5};
  CHECK_THROWS_AS(volume_halfspace_general(q, cfg), GeometryError);
}

TEST_CASE("Neville extrapolation") {
  const double h[] = {0.1, 0.05, 0.02};
  double v[3];
  for (int i = 0; i < 3; ++i) v[i] = 3.0 - 2.0 * h[i] + 5.0 * h[i] * h[i];
  CHECK(extrapolate_to_zero(h, v) == doctest::Approx(3.0).epsilon(1e-13));
  const double dup[] = {0.1, 0.1};
  CHECK_THROWS_AS(extrapolate_to_zero(dup, std::span<const double>(v, 2)), DomainError);
}

}
