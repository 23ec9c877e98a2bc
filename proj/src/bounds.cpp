#include "hypervol/bounds.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "hypervol/geometry.hpp"
#include "hypervol/volume_forms.hpp"

namespace hypervol {

namespace {

void require_n3(int n) {
  if (n < 3) throw DomainError("bound needs n >= 3");
}

// cos t * atanh(x) with 1 - x^2 = cos^2 t / den, exactly 0 at the ideal point.
double cos_times_atanh(double c, double x, double one_minus_x_sq) {
  if (c == 0.0) return 0.0;
  return c * atanh_from(x, one_minus_x_sq);
}

}  // namespace

double lower_bound(const SimplexParams& params, LowerBoundForm form) {
  const int n = params.n();
  require_n3(n);
  const double s = params.sin_t();
  const double c = params.cos_t();
  if (s == 0.0) return 0.0;
  const double q = double(n - 1) / (2.0 * n);
  const double den = 1.0 - s * s * q;
  const double pre = (n + 1) * std::ldexp(1.0, 1 - n) * std::sqrt(den) /
                     (std::sqrt(1.0 - q) * std::sqrt(double(n) * n - s * s));
  if (form == LowerBoundForm::square_root) {
    const double x = s * std::sqrt(1.0 - q) / std::sqrt(den);
    return pre * cos_times_atanh(c, x, params.cos_sq() / den);
  }
  const double x = s * std::sqrt(1.0 - q) / den;
  if (!(x < 1.0)) throw DomainError("atanh argument reaches 1 in the no-square-root form");
  return pre * c * std::atanh(x);
}

double lower_bound_from_ladder(const SimplexParams& params) {
  const int n = params.n();
  require_n3(n);
  if (params.degenerate()) return 0.0;
  if (params.ideal()) return 0.0;
  const OrthoschemeLadder lad = ladder(params);
  // cosh d_1 / sinh d_1 = 1 / tanh d_1 and 1 / cosh r_n = sqrt(sech^2 r_n).
  const double sinh_dn = lad.sinh_d(n);
  return (n + 1) * std::ldexp(1.0, 1 - n) * sinh_dn * std::sqrt(lad.sech_sq_r[n - 1]) *
         lad.d[0] / lad.tanh_d[0];
}

double upper_bound(const SimplexParams& params) {
  const int n = params.n();
  if (n < 2) throw DomainError("bound needs n >= 2");
  const double s = params.sin_t();
  const double oms = params.one_minus_sin();
  const double nn = double(n) * n;
  const double x = nn * oms * oms * (1.0 + s) /
                   ((n + s) * (n + s) * (1.0 + s) - (nn - 1.0) * s * s * oms * oms);
  if (x == 0.0) return 1.0 / (n - 1);
  return -std::expm1(0.5 * (n - 1) * std::log(x)) / (n - 1);
}

HmBounds hm_bounds(int n) {
  if (n < 2) throw DomainError("HM bounds need n >= 2");
  const double m = n - 1;
  return {(n - 2) / (m * m), 1.0 / m};
}

GrowthBounds growth_bounds(const SimplexParams& params) {
  const HmBounds hm = hm_bounds(params.n());
  return {lower_bound(params), upper_bound(params), hm.lo, hm.hi};
}

GrowthRatio growth_ratio_parts(const SimplexParams& params, const QuadratureConfig& cfg) {
  require_n3(params.n());
  if (params.degenerate()) throw DomainError("ratio undefined at t=0");
  GrowthRatio out;
  out.volume = volume_projective(params, cfg);
  out.facet = facet_volume_projective(params, cfg);
  const double r = out.volume.value / out.facet.value;
  const double rel = out.volume.error_estimate / std::abs(out.volume.value) +
                     out.facet.error_estimate / std::abs(out.facet.value);
  out.ratio = {r, std::abs(r) * rel, out.volume.n_evals + out.facet.n_evals,
               out.volume.method + "/" + out.facet.method};
  return out;
}

VolumeEstimate growth_ratio(const SimplexParams& params, const QuadratureConfig& cfg) {
  return growth_ratio_parts(params, cfg).ratio;
}

double euclidean_limit_ratio(int n) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  return double(n + 1) / (double(n) * n);
}

std::vector<double> default_audit_sequence() {
  std::vector<double> ts;
  for (int k = 1; k <= 6; ++k) ts.push_back(half_pi - std::pow(10.0, -k));
  return ts;
}

LimitAudit limit_audit(int n, std::span<const double> t_sequence) {
  require_n3(n);
  if (t_sequence.size() < 3) throw DomainError("limit audit needs at least three points");
  LimitAudit audit;
  audit.n = n;
  const double q = double(n - 1) / (2.0 * n);
  for (std::size_t i = 0; i < t_sequence.size(); ++i) {
    const double t = t_sequence[i];
    if (!(t > 0.0 && t < half_pi)) throw DomainError("audit points must lie in (0, pi/2)");
    if (i > 0 && !(t > t_sequence[i - 1])) throw DomainError("audit sequence must increase");
    LimitAuditRow row;
    row.t = t;
    row.eps = half_pi - t;
    const SimplexParams p = SimplexParams::from_complement(n, row.eps);
    const double s = p.sin_t(), c = p.cos_t();
    row.product = cos_times_atanh(c, s, p.cos_sq());
    const double den = 1.0 - s * s * q;
    row.bound_product = cos_times_atanh(c, s * std::sqrt(1.0 - q) / std::sqrt(den), p.cos_sq() / den);
    audit.rows.push_back(row);
  }
  const auto m = static_cast<Eigen::Index>(audit.rows.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd y(m), yb(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double e = audit.rows[i].eps;
    design(i, 0) = 1.0;
    design(i, 1) = -e * std::log(e);
    design(i, 2) = e;
    y(i) = audit.rows[i].product;
    yb(i) = audit.rows[i].bound_product;
  }
  const auto qr = design.colPivHouseholderQr();
  audit.fitted_limit = qr.solve(y)(0);
  audit.fitted_bound_limit = qr.solve(yb)(0);
  audit.monotone_decreasing = true;
  for (std::size_t i = 1; i < audit.rows.size(); ++i) {
    if (!(audit.rows[i].product < audit.rows[i - 1].product)) audit.monotone_decreasing = false;
  }
  return audit;
}

}  // namespace hypervol
