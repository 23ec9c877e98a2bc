#include "hypervol/volume_forms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hypervol {

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// (n+1)! = Gamma(n+2), kept in log space until the end.
double factorial_log(int n) { return std::lgamma(n + 1.0); }

VolumeEstimate scaled(VolumeEstimate e, double factor, std::string method) {
  e.value *= factor;
  e.error_estimate *= std::abs(factor);
  e.method = std::move(method);
  return e;
}

}  // namespace

double cosh_power_antiderivative(int m, double x) {
  if (m < 0) throw DomainError("cosh power must be nonnegative");
  if (m == 0) return x;
  const int k = m / 2;
  if (m % 2 == 0) {
    // cosh^{2k} = C(2k,k)/4^k + 2^{1-2k} sum_{l<k} C(2k,l) cosh(2(k-l)x)
    double sum = std::ldexp(binomial(2 * k, k), -2 * k) * x;
    for (int l = 0; l < k; ++l) {
      const int freq = 2 * (k - l);
      sum += std::ldexp(binomial(2 * k, l), 1 - 2 * k) * std::sinh(freq * x) / freq;
    }
    return sum;
  }
  // cosh^{2k+1} = 4^{-k} sum_{l<=k} C(2k+1,l) cosh((2(k-l)+1)x)
  double sum = 0.0;
  for (int l = 0; l <= k; ++l) {
    const int freq = 2 * (k - l) + 1;
    sum += std::ldexp(binomial(2 * k + 1, l), -2 * k) * std::sinh(freq * x) / freq;
  }
  return sum;
}

AlphaChain alpha_chain(const OrthoschemeLadder& lad) {
  if (lad.tanh_r.empty() || lad.tanh_r.back() == 0.0) {
    throw DomainError("alpha chain needs t > 0");
  }
  const int n = lad.n;
  AlphaChain chain;
  chain.n = n;
  chain.ideal = lad.ideal;
  chain.top = lad.d[0];
  chain.tanh_d2 = lad.tanh_d[1];
  // e^{-d} = sqrt((1 - tanh d) / (1 + tanh d)) = sech d / (1 + tanh d).
  chain.exp_neg_d1 = std::sqrt(lad.sech_sq_d[0]) / (1.0 + lad.tanh_d[0]);
  for (int k = 1; k <= n - 1; ++k) {
    const double sinh_dk = lad.sinh_d(k);
    chain.ratio.push_back(std::isinf(sinh_dk) ? 0.0 : lad.tanh_d[k] / sinh_dk);
    chain.domain.push_back(lad.d[k - 1]);
  }
  return chain;
}

double AlphaChain::operator()(int k, double x) const {
  if (k < 1 || k > n) throw DomainError("alpha index out of range");
  if (k == n) return top;
  const double arg = ratio[k - 1] * std::sinh(x);
  if (!(arg < 1.0)) {
    std::ostringstream msg;
    msg << "alpha_" << k << " argument " << arg << " >= 1 at x=" << x;
    throw DomainError(msg.str());
  }
  return std::atanh(arg);
}

double AlphaChain::first_from_face(double y) const {
  // sinh(d1 - y) / sinh(d1) = (u - E^2/u) / (1 - E^2) with u = e^{-y}, E = e^{-d1}.
  const double u = std::exp(-y);
  const double e2 = exp_neg_d1 * exp_neg_d1;
  const double frac = std::max(0.0, (u - e2 / u) / (1.0 - e2));
  return std::atanh(tanh_d2 * frac);
}

VolumeEstimate volume_orthoscheme(const SimplexParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = params.n();
  if (n > orthoscheme_max_dimension) {
    throw CapabilityError("orthoscheme form supports n <= " +
                          std::to_string(orthoscheme_max_dimension));
  }
  if (params.degenerate()) return {0.0, 0.0, 0, "orthoscheme"};

  const OrthoschemeLadder lad = ladder(params);
  const AlphaChain chain = alpha_chain(lad);

  // Outermost variable: the position along E1 -> K1.  For short edges it is
  // used directly; otherwise it is replaced by u = e^{-y}, y = d1 - x_n, which
  // keeps the range finite (including d1 = inf) and the integrand smooth.
  constexpr double direct_limit = 3.0;
  const bool direct = !lad.ideal && lad.d[0] <= direct_limit;
  std::function<double(double)> first_alpha;
  NestedLevel outer;
  if (direct) {
    const double d1 = lad.d[0];
    outer.lower = [](double) { return 0.0; };
    outer.upper = [d1](double) { return d1; };
    outer.factor = [](double) { return 1.0; };
    first_alpha = [&chain](double x) { return chain(1, x); };
  } else {
    const double e = chain.exp_neg_d1;
    outer.lower = [e](double) { return e; };
    outer.upper = [](double) { return 1.0; };
    outer.factor = [](double u) { return 1.0 / u; };
    first_alpha = [&chain](double u) { return chain.first_from_face(-std::log(u)); };
  }

  std::vector<NestedLevel> levels{outer};
  for (int k = 1; k <= n - 2; ++k) {
    NestedLevel lv;
    lv.lower = [](double) { return 0.0; };
    if (k == 1) {
      lv.upper = first_alpha;
    } else {
      lv.upper = [&chain, k](double x) { return chain(k, x); };
    }
    lv.factor = [k](double x) { return std::pow(std::cosh(x), k); };
    levels.push_back(std::move(lv));
  }
  // Innermost integral of cosh^{n-1} in closed form.
  std::function<double(double)> closure;
  if (n == 2) {
    closure = [&first_alpha](double x) { return cosh_power_antiderivative(1, first_alpha(x)); };
  } else {
    closure = [&chain, n](double x) {
      return cosh_power_antiderivative(n - 1, chain(n - 1, x));
    };
  }
  VolumeEstimate orth;
  try {
    orth = integrate_nested(levels, closure, cfg);
  } catch (const ConvergenceError& e) {
    const double f = std::exp(factorial_log(n + 1));
    throw ConvergenceError(e.what(), scaled(e.best(), f, "orthoscheme"), e.level());
  }
  return scaled(orth, std::exp(factorial_log(n + 1)), "orthoscheme");
}

VolumeEstimate volume_projective(const SimplexParams& params, const QuadratureConfig& cfg) {
  const int n = params.n();
  if (params.degenerate()) return {0.0, 0.0, 0, "projective"};
  auto e = integrate_simplex_radialpow(n, params.sin_t(), 0.5 * (n + 1), cfg, params.cos_sq());
  e.method = "projective";
  return e;
}

VolumeEstimate facet_volume_projective(const SimplexParams& params, const QuadratureConfig& cfg) {
  const int n = params.n();
  if (n < 3) throw DomainError("facet volume needs n >= 3");
  if (params.degenerate()) return {0.0, 0.0, 0, "facet-projective"};
  const OrthoschemeLadder lad = ladder(params);
  auto e = integrate_simplex_radialpow(n - 1, lad.tanh_r[n - 2], 0.5 * n, cfg,
                                       lad.sech_sq_r[n - 2]);
  e.method = "facet-projective";
  return e;
}

ZnBounds zn_bounds(const HalfspaceEmbedding& emb, const Point& v) {
  const SubsimplexLocation loc = locate_subsimplex(emb, v);
  const double rho2 = v.squaredNorm();
  const double lo2 = 1.0 - rho2;
  const double hi2 = emb.apex_height_sq - emb.height_slope * loc.alpha_sum - rho2;
  return {std::sqrt(std::max(0.0, lo2)), std::sqrt(std::max(0.0, hi2))};
}

namespace {

// Shared kernel of the half-space forms: the projected facet is a regular
// (n-1)-simplex of circumradius sin_alpha around the origin, the lower
// height^2 is 1 - |v|^2 and the upper one exceeds it by slope * (1 - alpha(v)).
struct HalfspaceShape {
  int n;
  double sin_alpha;
  double cos_alpha_sq;
  double slope;
};

template <class Real>
VolumeEstimate halfspace_kernel(const HalfspaceShape& shape, const QuadratureConfig& cfg) {
  const int n = shape.n;
  const int m = n - 1;  // dimension of the projected facet
  if (shape.sin_alpha == 0.0) return {0.0, 0.0, 0, "halfspace"};

  // Fundamental region of one sub-simplex in barycentric weights:
  // alpha_1 >= ... >= alpha_m >= 0, sum <= 1, with vertex e_1 (a facet
  // vertex, where the integrand peaks) first.
  std::vector<std::vector<Real>> region;
  for (int k = 1; k <= m; ++k) {
    std::vector<Real> w(m, Real(0));
    for (int j = 0; j < k; ++j) w[j] = Real(1) / k;
    region.push_back(std::move(w));
  }
  region.emplace_back(m, Real(0));

  const Real s2 = Real(shape.sin_alpha) * shape.sin_alpha;
  const Real c2 = shape.cos_alpha_sq;
  const Real slope = shape.slope;
  const Real power = Real(m) / 2;
  const Real nn = n;
  auto integrand = [=](std::span<const Real> delta) -> Real {
    // alpha = e_1 + delta;  |v|^2 = s2 * Q(alpha) with
    // Q(alpha) = (n sum alpha_j^2 - (sum alpha_j)^2) / (n-1).
    Real sum = 0, sq = 0;
    for (int j = 0; j < m; ++j) {
      sum += delta[j];
      sq += delta[j] * delta[j];
    }
    const Real cross = (nn * delta[0] - sum) / (nn - 1);
    const Real q_delta = (nn * sq - sum * sum) / (nn - 1);
    const Real lower_sq = c2 - s2 * (2 * cross + q_delta);  // 1 - |v|^2
    if (!(lower_sq > 0)) return Real(0);
    const Real gap = slope * std::max(Real(0), -sum);  // slope * (1 - alpha(v))
    // lower^-m - upper^-m = lower^-m (1 - (lower/upper)^m)
    return std::exp(-power * std::log(lower_sq)) *
           -std::expm1(-power * std::log1p(gap / lower_sq));
  };
  detail::CollapsedSimplexIntegrator<Real, decltype(integrand)> integ(
      region, integrand, static_cast<Real>(cfg.rel_tol), Real(0), cfg.max_subdivisions,
      cfg.base_order);
  auto est = integ.run();
  // n/(n-1) from the n congruent sub-simplices and the 1/(n-1) prefactor,
  // (n-1)! ordered regions per sub-simplex, and |det X| for v = X alpha.
  const Real det_x = std::pow(Real(shape.sin_alpha), m) * std::pow(nn, Real(n - 2) / 2) /
                     std::pow(nn - 1, Real(m) / 2);
  const Real factor = std::exp(std::lgamma(nn + 1)) / (nn - 1) * det_x;
  est.value *= factor;
  est.error *= factor;
  VolumeEstimate out = detail::to_volume_estimate(est, "halfspace");
  if (!est.converged || !std::isfinite(out.value)) {
    throw ConvergenceError("half-space cubature did not converge", out,
                           std::max(integ.failed_level(), 0));
  }
  return out;
}

VolumeEstimate run_halfspace(const HalfspaceShape& shape, const QuadratureConfig& cfg) {
  cfg.validate();
  if (cfg.precision == Precision::extended) return halfspace_kernel<long double>(shape, cfg);
  return halfspace_kernel<double>(shape, cfg);
}

}  // namespace

VolumeEstimate volume_halfspace(const SimplexParams& params, const QuadratureConfig& cfg) {
  if (params.degenerate()) {
    throw DomainError("halfspace undefined at t = 0 (degenerate embedding)");
  }
  if (params.ideal() || half_pi - params.t() < halfspace_ideal_margin) {
    throw DomainError("halfspace undefined at ideal t (use t <= pi/2 - 1e-6)");
  }
  const int n = params.n();
  const double s = params.sin_t();
  const double nn = double(n) * n;
  HalfspaceShape shape;
  shape.n = n;
  shape.sin_alpha = std::sqrt(nn - 1.0) * s / std::sqrt(nn - s * s);
  shape.cos_alpha_sq = nn * params.cos_sq() / (nn - s * s);
  shape.slope = 2.0 * (n + 1) * s / ((n - s) * params.one_minus_sin());
  return run_halfspace(shape, cfg);
}

VolumeEstimate volume_halfspace_general(const QuasiRegularParams& q, const QuadratureConfig& cfg,
                                        UpperHeightForm form) {
  if (q.n < 2) throw DomainError("dimension n must be at least 2");
  if (!(q.d > 0.0) || !(q.r >= q.d) || !std::isfinite(q.r)) {
    throw GeometryError("quasi-regular simplex needs r >= d > 0 with r finite");
  }
  if (!(q.facet_circumradius >= 0.0) || !std::isfinite(q.facet_circumradius)) {
    throw GeometryError("facet circumradius must be finite and nonnegative");
  }
  const double rd = q.r + q.d;
  HalfspaceShape shape;
  shape.n = q.n;
  shape.sin_alpha = std::tanh(q.facet_circumradius);
  const double sech = 1.0 / std::cosh(q.facet_circumradius);
  shape.cos_alpha_sq = sech * sech;
  if (form == UpperHeightForm::facet_sphere) {
    shape.slope = std::expm1(2.0 * rd);
  } else {
    const double e = std::exp(rd);
    shape.slope = e * (e + 2.0);
  }
  if (!(shape.slope >= 0.0)) {
    throw GeometryError("upper height falls below the facet hemisphere");
  }
  auto out = run_halfspace(shape, cfg);
  out.method = form == UpperHeightForm::facet_sphere ? "halfspace-general"
                                                     : "halfspace-general-as-printed";
  return out;
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size() || h.empty()) {
    throw DomainError("extrapolation needs matching, nonempty samples");
  }
  std::vector<double> p(values.begin(), values.end());
  const std::size_t m = p.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double hi = h[i], hj = h[i + level];
      if (hi == hj) throw DomainError("extrapolation nodes must be distinct");
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  }
  return p[0];
}

VolumeEstimate volume_halfspace_extrapolated(int n, std::span<const double> eps,
                                             const QuadratureConfig& cfg) {
  if (eps.size() < 2) throw DomainError("extrapolation needs at least two offsets");
  std::vector<double> h, vals;
  double quad_err = 0.0;
  std::int64_t evals = 0;
  for (double e : eps) {
    const auto v = volume_halfspace(SimplexParams::from_complement(n, e), cfg);
    h.push_back(std::pow(e, n - 1));
    vals.push_back(v.value);
    quad_err = std::max(quad_err, v.error_estimate);
    evals += v.n_evals;
  }
  const double full = extrapolate_to_zero(h, vals);
  const double partial =
      extrapolate_to_zero(std::span(h).subspan(1), std::span<const double>(vals).subspan(1));
  return {full, std::abs(full - partial) + quad_err, evals, "halfspace-extrapolated"};
}

}  // namespace hypervol
