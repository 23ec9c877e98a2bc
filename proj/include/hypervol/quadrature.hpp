#pragma once

// Adaptive integration engines: a 1-D Gauss-Kronrod driver, iterated
// integrals with state-dependent limits, cubature over simplices with a
// collapsed vertex, and a seeded Monte Carlo sampler used as a cross-check.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace hypervol {

enum class QuadratureMethod { adaptive, monte_carlo };
enum class Precision { standard, extended };

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 400;
  /// Kronrod points per panel: 15 or 21.
  int base_order = 21;
  QuadratureMethod method = QuadratureMethod::adaptive;
  std::uint64_t seed = 0x5eed5eedULL;
  std::int64_t mc_samples = 1'000'000;
  /// extended evaluates the simplex cubatures in long double.
  Precision precision = Precision::standard;
  /// Worker threads for Monte Carlo chunks; results do not depend on it.
  int threads = 1;

  void validate() const;
};

struct VolumeEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t n_evals = 0;
  std::string method;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, VolumeEstimate best, int level = 0)
      : std::runtime_error(what), best_(std::move(best)), level_(level) {}
  const VolumeEstimate& best() const { return best_; }
  /// Nesting level (0 = outermost) at which the failure was detected.
  int level() const { return level_; }

 private:
  VolumeEstimate best_;
  int level_;
};

namespace detail {

/// Integrand value together with the error already committed in computing it
/// (non-zero when the value is itself an inner integral).
template <class Real>
struct Sample {
  Real value{};
  Real error{};
};

template <class Real>
struct Estimate {
  Real value{};
  Real error{};
  std::int64_t evals = 0;
  bool converged = true;
};

template <class Real>
Sample<Real> as_sample(Sample<Real> s) {
  return s;
}

template <class Real, class T>
  requires std::is_arithmetic_v<T>
Sample<Real> as_sample(T v) {
  return {static_cast<Real>(v), Real(0)};
}

template <class Real>
struct Panel {
  Real a{};
  Real b{};
  Real value{};
  Real rule_error{};
  Real inner_error{};
  Real abs_value{};
  Real total() const { return rule_error + inner_error; }
  bool operator<(const Panel& other) const { return total() < other.total(); }
};

/// One Gauss-Kronrod panel with the QUADPACK error heuristic.
template <class Real, unsigned N, class F>
Panel<Real> gk_panel(F& f, Real a, Real b) {
  using GK = boost::math::quadrature::gauss_kronrod<Real, N>;
  using G = boost::math::quadrature::gauss<Real, (N - 1) / 2>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  constexpr bool gauss_has_center = ((N - 1) / 2) % 2 == 1;

  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  std::array<Real, 2 * N> fv{};  // f at +x_i in [0, N), -x_i in [N, 2N)
  Real kron = 0, gauss = 0, inner = 0, resabs = 0;

  const Sample<Real> f0 = as_sample<Real>(f(center));
  fv[0] = f0.value;
  kron = f0.value * wk[0];
  inner = f0.error * wk[0];
  resabs = std::abs(f0.value) * wk[0];
  if constexpr (gauss_has_center) gauss = f0.value * wg[0];
  for (unsigned i = 1; i < xk.size(); ++i) {
    const Sample<Real> fp = as_sample<Real>(f(center + half * xk[i]));
    const Sample<Real> fm = as_sample<Real>(f(center - half * xk[i]));
    fv[i] = fp.value;
    fv[N + i] = fm.value;
    kron += (fp.value + fm.value) * wk[i];
    inner += (fp.error + fm.error) * wk[i];
    resabs += (std::abs(fp.value) + std::abs(fm.value)) * wk[i];
    const bool gauss_node = gauss_has_center ? (i % 2 == 0) : (i % 2 == 1);
    if (gauss_node) gauss += (fp.value + fm.value) * wg[i / 2];
  }
  const Real mean = kron / 2;
  Real resasc = std::abs(fv[0] - mean) * wk[0];
  for (unsigned i = 1; i < xk.size(); ++i) {
    resasc += (std::abs(fv[i] - mean) + std::abs(fv[N + i] - mean)) * wk[i];
  }
  const Real ahalf = std::abs(half);
  resasc *= ahalf;
  resabs *= ahalf;
  Real err = std::abs((kron - gauss) * half);
  if (resasc != 0 && err != 0) {
    err = resasc * std::min(Real(1), std::pow(Real(200) * err / resasc, Real(1.5)));
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  if (resabs > std::numeric_limits<Real>::min() / (50 * eps)) {
    err = std::max(err, 50 * eps * resabs);
  }
  return Panel<Real>{a, b, kron * half, err, inner * ahalf, resabs};
}

/// Globally adaptive bisection driven by the panel with the largest error.
/// Never throws; failure is reported through `converged`.
template <class Real, class F>
Estimate<Real> adaptive_gk(F&& f, Real a, Real b, Real rel_tol, Real abs_tol, int max_panels,
                           int order) {
  Estimate<Real> est;
  if (a == b) return est;
  auto panel = [&](Real lo, Real hi) {
    est.evals += order == 15 ? 15 : 21;
    return order == 15 ? gk_panel<Real, 15>(f, lo, hi) : gk_panel<Real, 21>(f, lo, hi);
  };
  std::vector<Panel<Real>> heap;
  heap.push_back(panel(a, b));
  Real value = heap.front().value;
  Real error = heap.front().total();
  Real absval = heap.front().abs_value;
  const Real eps = std::numeric_limits<Real>::epsilon();
  auto done = [&] {
    return error <= std::max(abs_tol, rel_tol * std::abs(value)) || error <= 50 * eps * absval;
  };
  bool stuck = false;
  while (!done() && static_cast<int>(heap.size()) < max_panels) {
    std::pop_heap(heap.begin(), heap.end());
    const Panel<Real> worst = heap.back();
    const Real mid = (worst.a + worst.b) / 2;
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      std::push_heap(heap.begin(), heap.end());
      stuck = true;
      break;
    }
    heap.back() = panel(worst.a, mid);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(panel(mid, worst.b));
    std::push_heap(heap.begin(), heap.end());
    // Re-sum rather than update incrementally so cancellation cannot leave a
    // stale error total behind.
    value = 0;
    error = 0;
    absval = 0;
    for (const Panel<Real>& p : heap) {
      value += p.value;
      error += p.total();
      absval += p.abs_value;
    }
  }
  est.value = value;
  est.error = error;
  est.converged = !stuck && done();
  return est;
}

/// Integral of f over the simplex conv(v_0..v_m) in R^m.  The simplex is
/// collapsed onto v_0: x = v_0 + u1 (e1 + u2 (e2 + ...)) with e_k = v_k - v_{k-1}
/// and u1 = w^2, so an integrand blowing up like |x - v_0|^(-m+1/2) or milder
/// at v_0 becomes bounded in w.  f receives the displacement x - v_0.  The
/// collapse variable is the outermost integral and each level gets
/// rel_tol / m of the error budget.
template <class Real, class F>
class CollapsedSimplexIntegrator {
 public:
  CollapsedSimplexIntegrator(const std::vector<std::vector<Real>>& verts, F f, Real rel_tol,
                             Real abs_tol, int max_panels, int order)
      : f_(std::move(f)), max_panels_(max_panels), order_(order) {
    dim_ = static_cast<int>(verts.size()) - 1;
    if (dim_ < 1) throw std::invalid_argument("simplex needs at least two vertices");
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> edges(dim_, dim_);
    edges_.resize(dim_);
    for (int k = 0; k < dim_; ++k) {
      edges_[k].resize(dim_);
      for (int j = 0; j < dim_; ++j) {
        edges_[k][j] = verts[k + 1][j] - verts[k][j];
        edges(j, k) = edges_[k][j];
      }
    }
    jacobian_ = std::abs(edges.determinant());
    delta_.assign(dim_ + 1, std::vector<Real>(dim_, Real(0)));
    level_tol_ = rel_tol / dim_;
    abs_tol_ = abs_tol;
  }

  Estimate<Real> run() {
    failed_level_ = -1;
    evals_ = 0;
    Estimate<Real> outer = adaptive_gk<Real>(
        [this](Real w) { return level_one(w); }, Real(0), Real(1), level_tol_, abs_tol_ / jacobian_,
        max_panels_, order_);
    outer.value *= jacobian_;
    outer.error *= jacobian_;
    outer.evals = evals_;
    if (!outer.converged && failed_level_ < 0) failed_level_ = 0;
    outer.converged = outer.converged && failed_level_ < 0;
    return outer;
  }

  /// Level of the first non-converged integral after run(), or -1.
  int failed_level() const { return failed_level_; }

 private:
  Sample<Real> level_one(Real w) {
    const Real u = w * w;
    for (int j = 0; j < dim_; ++j) delta_[1][j] = u * edges_[0][j];
    const Real factor = 2 * w * std::pow(u, dim_ - 1);
    Sample<Real> inner = descend(2, u);
    return {factor * inner.value, factor * inner.error};
  }

  // Levels 2..dim integrate u_k over [0,1] with weight u_k^(dim-k).
  Sample<Real> descend(int k, Real prefix) {
    if (k > dim_) {
      ++evals_;
      return {f_(std::span<const Real>(delta_[dim_]))};
    }
    const Real tol = level_tol_;
    Estimate<Real> e = adaptive_gk<Real>(
        [this, k, prefix](Real u) {
          const Real p = prefix * u;
          for (int j = 0; j < dim_; ++j) delta_[k][j] = delta_[k - 1][j] + p * edges_[k - 1][j];
          const Real factor = std::pow(u, dim_ - k);
          Sample<Real> inner = descend(k + 1, p);
          return Sample<Real>{factor * inner.value, factor * inner.error};
        },
        Real(0), Real(1), tol, Real(0), max_panels_, order_);
    if (!e.converged && failed_level_ < 0) failed_level_ = k - 1;
    return {e.value, e.error};
  }

  F f_;
  int dim_ = 0;
  int max_panels_;
  int order_;
  Real level_tol_{};
  Real abs_tol_{};
  Real jacobian_{};
  std::vector<std::vector<Real>> edges_;
  std::vector<std::vector<Real>> delta_;
  int failed_level_ = -1;
  std::int64_t evals_ = 0;
};

VolumeEstimate to_volume_estimate(const Estimate<double>& e, std::string method);
VolumeEstimate to_volume_estimate(const Estimate<long double>& e, std::string method);

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b].  The rule never samples
/// the endpoints, so integrable endpoint singularities are tolerated.
VolumeEstimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureConfig& cfg);

/// One level of an iterated integral: x_k runs from lower(x_{k-1}) to
/// upper(x_{k-1}) with weight factor(x_k).  The outermost level is called
/// with 0.0 as its enclosing variable.  An infinite upper limit is handled by
/// the substitution x = lo + u / (1 - u).
struct NestedLevel {
  std::function<double(double)> lower;
  std::function<double(double)> upper;
  std::function<double(double)> factor;
};

/// Iterated integral over the chain `levels`; `closure` is the value of
/// everything inside the innermost level as a function of its variable (use
/// it for a closed-form innermost integral).  Each level gets rel_tol/depth.
VolumeEstimate integrate_nested(std::span<const NestedLevel> levels,
                                const std::function<double(double)>& closure,
                                const QuadratureConfig& cfg);

/// Integral of f over conv(vertices) in R^m (m+1 vertices), collapsed onto
/// vertices[0]; f receives the displacement from vertices[0].
VolumeEstimate integrate_simplex(const std::vector<Eigen::VectorXd>& vertices,
                                 const std::function<double(std::span<const double>)>& f,
                                 const QuadratureConfig& cfg);

/// Integral of (1 - |x|^2)^(-p) over scale * S(n).  `one_minus_scale_sq`
/// may be passed when 1 - scale^2 is known more accurately than the
/// subtraction gives.
VolumeEstimate integrate_simplex_radialpow(int n, double scale, double p,
                                           const QuadratureConfig& cfg,
                                           std::optional<double> one_minus_scale_sq = {});

/// Monte Carlo estimate of the integral of f over scale * S(n), sampling
/// uniformly through normalised exponential spacings.  Each chunk of samples
/// draws from its own stream keyed by (seed, chunk), so the result is the
/// same for any thread count.
VolumeEstimate monte_carlo_simplex(int n, double scale,
                                   const std::function<double(const Eigen::VectorXd&)>& f,
                                   const QuadratureConfig& cfg);

VolumeEstimate monte_carlo_simplex_radialpow(int n, double scale, double p,
                                             const QuadratureConfig& cfg);

}  // namespace hypervol
