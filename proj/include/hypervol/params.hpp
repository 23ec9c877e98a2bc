#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace hypervol {

inline constexpr double half_pi = std::numbers::pi / 2;

// Inputs a hair above pi/2 (e.g. "1.5707963268" typed on a command line) are
// snapped to the ideal point instead of being rejected.
inline constexpr double ideal_snap = 1e-9;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair (n, t) identifying the regular simplex of dimension n whose
/// projective-model circumradius is sin t.  Sine and cosine are stored
/// separately so that either can be exact (sin t = 3/5, or cos t = 0 at the
/// ideal point) and so that 1 - sin t stays accurate near t = pi/2.
class SimplexParams {
 public:
  static SimplexParams from_angle(int n, double t);
  static SimplexParams from_sine(int n, double sin_t);
  /// t = pi/2 - eps with cos t = sin(eps) evaluated directly.
  static SimplexParams from_complement(int n, double eps);

  int n() const { return n_; }
  double t() const { return t_; }
  double sin_t() const { return sin_; }
  double cos_t() const { return cos_; }
  double cos_sq() const { return cos_ * cos_; }
  /// 1 - sin t without cancellation.
  double one_minus_sin() const { return cos_sq() / (1.0 + sin_); }
  bool ideal() const { return cos_ == 0.0; }
  bool degenerate() const { return sin_ == 0.0; }

  std::string describe() const;

 private:
  SimplexParams(int n, double t, double s, double c) : n_(n), t_(t), sin_(s), cos_(c) {}

  int n_;
  double t_;
  double sin_;
  double cos_;
};

}  // namespace hypervol
