#pragma once

// Test-only reference formulas, written without the library.

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

constexpr double pi = std::numbers::pi;

// Area of the regular hyperbolic triangle with circumradius R (Gauss-Bonnet):
// the right triangle (centre, vertex, edge midpoint) has cot(theta/2) = cosh R tan(pi/3).
inline double triangle_area(double circumradius) {
  const double half = std::atan(1.0 / (std::cosh(circumradius) * std::tan(pi / 3)));
  return pi - 6.0 * half;
}

// Cl_2(x) = x - x ln|x| + sum_k zeta(2k) / (k (2k+1)) * x^(2k+1) / (2 pi)^(2k), |x| < 2 pi.
inline double clausen2(double x) {
  double sum = x - x * std::log(std::abs(x));
  const double r = x / (2 * pi);
  double pw = x;
  for (int k = 1; k < 200; ++k) {
    pw *= r * r;
    const double term = boost::math::zeta(2.0 * k) / (k * (2.0 * k + 1)) * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline double lobachevsky(double theta) { return 0.5 * clausen2(2 * theta); }

// Frozen 50-digit values (tests/oracles/reference_values.py).
constexpr double ideal_tetrahedron = 1.014941606409653625;
constexpr double ideal_n3_ratio = 0.32306594721945051409;
constexpr double facet_n3_sin_3_5 = 0.4985286755616023611;
constexpr double triangle_sin_3_5 = 0.54545578893808103987;

struct TriangleCase {
  double t;
  double area;
};

constexpr TriangleCase triangle_cases[] = {
    {0.3, 0.1173345558408634111},
    {0.64350110879328439, 0.54545578893808103987},
    {0.8, 0.84695748412458540671},
    {1.3, 2.2222132490840005416},
    {1.5, 2.8966878988211366251},
};

}  // namespace oracle
