#include "hypervol/params.hpp"

#include <cmath>
#include <sstream>

namespace hypervol {

namespace {

void check_dimension(int n) {
  if (n < 2) throw DomainError("dimension n must be at least 2, got " + std::to_string(n));
}

}  // namespace

SimplexParams SimplexParams::from_angle(int n, double t) {
  check_dimension(n);
  if (!std::isfinite(t) || t < 0.0 || t > half_pi + ideal_snap) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t must lie in [0, pi/2], got " << t;
    throw DomainError(msg.str());
  }
  if (t >= half_pi) return SimplexParams(n, half_pi, 1.0, 0.0);
  if (t == 0.0) return SimplexParams(n, 0.0, 0.0, 1.0);
  return SimplexParams(n, t, std::sin(t), std::cos(t));
}

SimplexParams SimplexParams::from_sine(int n, double sin_t) {
  check_dimension(n);
  if (!std::isfinite(sin_t) || sin_t < 0.0 || sin_t > 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sin t must lie in [0, 1], got " << sin_t;
    throw DomainError(msg.str());
  }
  const double c = std::sqrt((1.0 - sin_t) * (1.0 + sin_t));
  return SimplexParams(n, std::asin(sin_t), sin_t, c);
}

SimplexParams SimplexParams::from_complement(int n, double eps) {
  check_dimension(n);
  if (!std::isfinite(eps) || eps < 0.0 || eps > half_pi) {
    throw DomainError("distance from pi/2 must lie in [0, pi/2]");
  }
  if (eps == 0.0) return SimplexParams(n, half_pi, 1.0, 0.0);
  return SimplexParams(n, half_pi - eps, std::cos(eps), std::sin(eps));
}

std::string SimplexParams::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "n=" << n_ << " t=" << t_ << " sin(t)=" << sin_;
  return out.str();
}

}  // namespace hypervol
