#pragma once

// Three independent integral representations of the volume of tau[n,t]:
// orthogonal coordinates over the fundamental orthoscheme, the projective
// model, and the upper half-space model.

#include <span>
#include <vector>

#include "hypervol/geometry.hpp"
#include "hypervol/params.hpp"
#include "hypervol/quadrature.hpp"

namespace hypervol {

/// Largest dimension the orthoscheme form accepts.
inline constexpr int orthoscheme_max_dimension = 12;

/// F_m(x) = integral of cosh^m over [0, x], from the power-reduction
/// expansion: even m carries a linear term, odd m is a pure sinh sum.
double cosh_power_antiderivative(int m, double x);

/// Upper limits of the orthoscheme volume form.  alpha_k(x) =
/// atanh(ratio_k sinh x) for k = 1..n-1, where ratio_k = tanh d_{k+1} / sinh d_k,
/// and alpha_n = d_1 bounds the outermost variable.
struct AlphaChain {
  int n = 0;
  bool ideal = false;
  std::vector<double> ratio;  // ratio[k-1] = ratio_k
  std::vector<double> domain; // alpha_k is defined for x in [0, domain[k-1]] = [0, d_k]
  double top = 0.0;           // alpha_n = d_1 (may be +inf)
  double tanh_d2 = 0.0;
  double exp_neg_d1 = 0.0;    // e^{-d_1}; 0 at the ideal point

  double operator()(int k, double x) const;
  /// alpha_1 written in y = d_1 - x, the distance back from K_1; stays finite
  /// when d_1 is infinite.
  double first_from_face(double y) const;
};

AlphaChain alpha_chain(const OrthoschemeLadder& ladder);

VolumeEstimate volume_orthoscheme(const SimplexParams& params, const QuadratureConfig& cfg);
VolumeEstimate volume_projective(const SimplexParams& params, const QuadratureConfig& cfg);
VolumeEstimate facet_volume_projective(const SimplexParams& params, const QuadratureConfig& cfg);

/// Range of heights z for which (v, z) lies in the half-space image.
struct ZnBounds {
  double lo = 0.0;
  double hi = 0.0;
};

ZnBounds zn_bounds(const HalfspaceEmbedding& emb, const Point& v);

/// The half-space form needs 1 - sin t > 0 to a usable degree; closer to
/// pi/2 than this the form is rejected.
inline constexpr double halfspace_ideal_margin = 1e-6;

VolumeEstimate volume_halfspace(const SimplexParams& params, const QuadratureConfig& cfg);

/// Simplex with a regular facet whose circumcentre K, the point O and the
/// apex lie on one geodesic perpendicular to the facet.
struct QuasiRegularParams {
  int n = 0;
  double r = 0.0;                   // rho(O, apex)
  double d = 0.0;                   // rho(K, O)
  double facet_circumradius = 0.0;  // circumradius of the regular facet
};

enum class UpperHeightForm {
  /// E^2 - (E^2 - 1) alpha(v) - rho^2 with E = e^{r+d}: the facet sphere
  /// through the apex.
  facet_sphere,
  /// (E+1)^2 - E(E+2) alpha(v) - rho^2, the printed variant.  Kept for
  /// reproduction only: at v = 0 it overshoots the apex height E^2.
  as_printed,
};

VolumeEstimate volume_halfspace_general(const QuasiRegularParams& q, const QuadratureConfig& cfg,
                                        UpperHeightForm form = UpperHeightForm::facet_sphere);

/// Polynomial (Neville) extrapolation of values[i] sampled at h[i] to h = 0.
double extrapolate_to_zero(std::span<const double> h, std::span<const double> values);

/// Ideal-point volume from the half-space form evaluated at
/// t = pi/2 - eps_i and extrapolated in eps^(n-1).
VolumeEstimate volume_halfspace_extrapolated(int n, std::span<const double> eps,
                                             const QuadratureConfig& cfg);

}  // namespace hypervol
