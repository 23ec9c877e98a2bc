#pragma once

// Closed-form lower and upper bounds on the volume growth V(tau)/V(facet),
// the Haagerup-Munkholm reference bounds, and the measured ratio itself.

#include <span>
#include <vector>

#include "hypervol/params.hpp"
#include "hypervol/quadrature.hpp"

namespace hypervol {

struct GrowthBounds {
  double lower = 0.0;
  double upper = 0.0;
  double hm_lower = 0.0;
  double hm_upper = 0.0;
};

enum class LowerBoundForm {
  /// atanh(s sqrt(1-q) / sqrt(1 - s^2 q)), q = (n-1)/(2n): the argument is tanh d_1.
  square_root,
  /// atanh(s sqrt(1-q) / (1 - s^2 q)); reproduces an alternative printed
  /// display.  The argument reaches 1 before t = pi/2.
  no_square_root,
};

/// At t = pi/2 the product cos t * atanh(..) is replaced by its limit, 0.
double lower_bound(const SimplexParams& params,
                   LowerBoundForm form = LowerBoundForm::square_root);

/// The same bound assembled from ladder quantities:
/// (n+1) 2^(1-n) sinh d_n cosh d_1 d_1 / (cosh r_n sinh d_1).
double lower_bound_from_ladder(const SimplexParams& params);

double upper_bound(const SimplexParams& params);

struct HmBounds {
  double lo = 0.0;
  double hi = 0.0;
};

HmBounds hm_bounds(int n);

GrowthBounds growth_bounds(const SimplexParams& params);

/// Volume over facet volume; the estimates of both are kept for reporting.
struct GrowthRatio {
  VolumeEstimate ratio;
  VolumeEstimate volume;
  VolumeEstimate facet;
};

GrowthRatio growth_ratio_parts(const SimplexParams& params, const QuadratureConfig& cfg);
VolumeEstimate growth_ratio(const SimplexParams& params, const QuadratureConfig& cfg);

/// (n+1)/n^2: V_n(S)/V_{n-1}(F) per unit circumradius for Euclidean S.
double euclidean_limit_ratio(int n);

struct LimitAuditRow {
  double t = 0.0;
  double eps = 0.0;               // pi/2 - t
  double product = 0.0;           // cos t * atanh(sin t)
  double bound_product = 0.0;     // cos t * atanh(tanh d_1), as in the lower bound
};

struct LimitAudit {
  int n = 0;
  std::vector<LimitAuditRow> rows;
  /// Constant term of a least-squares fit a + b eps log(1/eps) + c eps.
  double fitted_limit = 0.0;
  double fitted_bound_limit = 0.0;
  /// Value asserted for the limit in the source being audited.
  double claimed_limit = 1.0;
  bool monotone_decreasing = false;
};

/// t = pi/2 - 10^-k for k = 1..6.
std::vector<double> default_audit_sequence();

LimitAudit limit_audit(int n, std::span<const double> t_sequence);

}  // namespace hypervol
