#include "hypervol/quadrature.hpp"

#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "hypervol/geometry.hpp"
#include "hypervol/params.hpp"

namespace hypervol {

void QuadratureConfig::validate() const {
  const double floor = 10.0 * std::numeric_limits<double>::epsilon();
  if (!(rel_tol >= floor)) throw DomainError("rel_tol must be at least 10 machine epsilons");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
  if (base_order != 15 && base_order != 21) throw DomainError("base_order must be 15 or 21");
  if (mc_samples < 1) throw DomainError("mc_samples must be positive");
  if (threads < 1) throw DomainError("threads must be at least 1");
}

namespace detail {

VolumeEstimate to_volume_estimate(const Estimate<double>& e, std::string method) {
  return {e.value, e.error, e.evals, std::move(method)};
}

VolumeEstimate to_volume_estimate(const Estimate<long double>& e, std::string method) {
  return {static_cast<double>(e.value), static_cast<double>(e.error), e.evals, std::move(method)};
}

}  // namespace detail

namespace {

std::string describe_failure(const char* what, const VolumeEstimate& best) {
  std::ostringstream msg;
  msg.precision(6);
  msg << what << " did not converge (best estimate " << best.value << " +- "
      << best.error_estimate << ")";
  return msg.str();
}

}  // namespace

VolumeEstimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a <= b)) throw DomainError("integrate_adaptive requires a <= b");
  const auto est = detail::adaptive_gk<double>(f, a, b, cfg.rel_tol, cfg.abs_tol,
                                               cfg.max_subdivisions, cfg.base_order);
  VolumeEstimate out = detail::to_volume_estimate(est, "adaptive-gk");
  if (!est.converged || !std::isfinite(est.value)) {
    throw ConvergenceError(describe_failure("adaptive integral", out), out, 0);
  }
  return out;
}

namespace {

class NestedRunner {
 public:
  NestedRunner(std::span<const NestedLevel> levels, const std::function<double(double)>& closure,
               const QuadratureConfig& cfg)
      : levels_(levels), closure_(closure), cfg_(cfg) {
    level_tol_ = cfg.rel_tol / static_cast<double>(levels.size());
  }

  detail::Estimate<double> level(std::size_t k, double enclosing) {
    const NestedLevel& lv = levels_[k];
    const double lo = lv.lower(enclosing);
    const double hi = lv.upper(enclosing);
    const bool last = k + 1 == levels_.size();
    auto body = [&](double x) -> detail::Sample<double> {
      const double w = lv.factor(x);
      if (last) {
        ++evals_;
        return {w * closure_(x), 0.0};
      }
      const auto inner = level(k + 1, x);
      return {w * inner.value, std::abs(w) * inner.error};
    };
    const double abs_tol = k == 0 ? cfg_.abs_tol : 0.0;
    detail::Estimate<double> est;
    if (std::isinf(hi) && hi > 0) {
      // x = lo + u / (1 - u) maps [lo, inf) onto [0, 1).
      auto mapped = [&](double u) -> detail::Sample<double> {
        if (!(u < 1.0)) return {0.0, 0.0};
        const double w = 1.0 / (1.0 - u);
        const auto s = body(lo + u * w);
        return {w * w * s.value, w * w * s.error};
      };
      est = detail::adaptive_gk<double>(mapped, 0.0, 1.0, level_tol_, abs_tol,
                                        cfg_.max_subdivisions, cfg_.base_order);
    } else {
      est = detail::adaptive_gk<double>(body, lo, hi, level_tol_, abs_tol,
                                        cfg_.max_subdivisions, cfg_.base_order);
    }
    if (!est.converged && failed_level_ < 0) failed_level_ = static_cast<int>(k);
    return est;
  }

  int failed_level() const { return failed_level_; }
  std::int64_t evals() const { return evals_; }

 private:
  std::span<const NestedLevel> levels_;
  const std::function<double(double)>& closure_;
  const QuadratureConfig& cfg_;
  double level_tol_ = 0.0;
  int failed_level_ = -1;
  std::int64_t evals_ = 0;
};

}  // namespace

VolumeEstimate integrate_nested(std::span<const NestedLevel> levels,
                                const std::function<double(double)>& closure,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (levels.empty()) throw DomainError("nested integral needs at least one level");
  NestedRunner runner(levels, closure, cfg);
  auto est = runner.level(0, 0.0);
  VolumeEstimate out{est.value, est.error, runner.evals(), "nested-gk"};
  if (runner.failed_level() >= 0 || !std::isfinite(est.value)) {
    const int lvl = std::max(runner.failed_level(), 0);
    throw ConvergenceError(
        describe_failure(("nested integral level " + std::to_string(lvl)).c_str(), out), out,
        lvl);
  }
  return out;
}

VolumeEstimate integrate_simplex(const std::vector<Eigen::VectorXd>& vertices,
                                 const std::function<double(std::span<const double>)>& f,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  const int m = static_cast<int>(vertices.size()) - 1;
  if (m < 1) throw DomainError("simplex needs at least two vertices");
  std::vector<std::vector<double>> verts;
  for (const auto& v : vertices) {
    if (v.size() != m) throw DomainError("vertex dimension does not match vertex count");
    verts.emplace_back(v.data(), v.data() + m);
  }
  detail::CollapsedSimplexIntegrator<double, decltype(f)> integ(
      verts, f, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, cfg.base_order);
  const auto est = integ.run();
  VolumeEstimate out = detail::to_volume_estimate(est, "simplex-collapsed-gk");
  if (!est.converged || !std::isfinite(est.value)) {
    throw ConvergenceError(describe_failure("simplex cubature", out), out,
                           std::max(integ.failed_level(), 0));
  }
  return out;
}

namespace {

template <class Real>
VolumeEstimate radialpow_impl(int n, Real scale, Real complement, Real p,
                              const QuadratureConfig& cfg) {
  // One Euclidean orthoscheme conv(E1, K1, .., K_{n-1}, O) of the unit S(n);
  // (n+1)! copies of it tile the simplex and the integrand is radial.
  const auto unit = regular_simplex_vertices(n, 1.0);
  std::vector<std::vector<Real>> orth;
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    centroid = (centroid * j + unit[j]) / (j + 1);
    orth.emplace_back(centroid.data(), centroid.data() + n);
  }
  orth.emplace_back(n, Real(0));
  const std::vector<Real> e1 = orth.front();

  const Real s2 = scale * scale;
  auto integrand = [&](std::span<const Real> delta) -> Real {
    // 1 - |E1 + delta|^2 with |E1| = 1, expanded about the vertex.
    Real dot = 0, norm2 = 0;
    for (int j = 0; j < n; ++j) {
      dot += e1[j] * delta[j];
      norm2 += delta[j] * delta[j];
    }
    const Real g = complement - s2 * (2 * dot + norm2);
    if (!(g > 0)) return Real(0);
    return std::exp(-p * std::log(g));
  };
  // Relative accuracy is what matters; absolute tolerance is rescaled below.
  detail::CollapsedSimplexIntegrator<Real, decltype(integrand)> integ(
      orth, integrand, static_cast<Real>(cfg.rel_tol), Real(0), cfg.max_subdivisions,
      cfg.base_order);
  auto est = integ.run();
  const Real factor = std::pow(scale, n) * std::exp(std::lgamma(Real(n + 2)));
  est.value *= factor;
  est.error *= factor;
  VolumeEstimate out = detail::to_volume_estimate(
      est, cfg.precision == Precision::extended ? "simplex-radialpow-gk-ld" : "simplex-radialpow-gk");
  if (!est.converged || !std::isfinite(out.value)) {
    throw ConvergenceError(describe_failure("simplex cubature", out), out,
                           std::max(integ.failed_level(), 0));
  }
  return out;
}

}  // namespace

VolumeEstimate integrate_simplex_radialpow(int n, double scale, double p,
                                           const QuadratureConfig& cfg,
                                           std::optional<double> one_minus_scale_sq) {
  cfg.validate();
  if (n < 1) throw DomainError("simplex dimension must be positive");
  if (!(scale >= 0.0 && scale <= 1.0)) throw DomainError("scale must lie in [0, 1]");
  const double complement =
      one_minus_scale_sq ? *one_minus_scale_sq : (1.0 - scale) * (1.0 + scale);
  if (complement < 0.0) throw DomainError("1 - scale^2 must be nonnegative");
  if (scale == 0.0) return {0.0, 0.0, 0, "simplex-radialpow-gk"};
  // At scale 1 the integrand behaves like dist^(-p) at each vertex.
  if (complement == 0.0 && p >= n) {
    throw DomainError("integral diverges at the ideal vertices (p >= n at scale 1)");
  }
  if (cfg.precision == Precision::extended) {
    return radialpow_impl<long double>(n, scale, complement, p, cfg);
  }
  return radialpow_impl<double>(n, scale, complement, p, cfg);
}

namespace {

constexpr std::int64_t mc_chunk = 1 << 14;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

ChunkSums run_chunk(const std::vector<Eigen::VectorXd>& verts,
                    const std::function<double(const Eigen::VectorXd&)>& f, std::uint64_t seed,
                    std::uint64_t chunk, std::int64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  const int m = static_cast<int>(verts.size());
  std::vector<double> spacing(m);
  Eigen::VectorXd x(verts.front().size());
  ChunkSums sums;
  for (std::int64_t i = 0; i < count; ++i) {
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      const double u = std::generate_canonical<double, 64>(rng);
      spacing[j] = -std::log1p(-u);
      total += spacing[j];
    }
    x.setZero();
    for (int j = 0; j < m; ++j) x += (spacing[j] / total) * verts[j];
    const double y = f(x);
    sums.sum += y;
    sums.sum_sq += y * y;
  }
  return sums;
}

}  // namespace

VolumeEstimate monte_carlo_simplex(int n, double scale,
                                   const std::function<double(const Eigen::VectorXd&)>& f,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  if (cfg.mc_samples < 100) throw DomainError("Monte Carlo needs at least 100 samples");
  if (!(scale >= 0.0 && scale <= 1.0)) throw DomainError("scale must lie in [0, 1]");
  const auto verts = regular_simplex_vertices(n, scale);
  const std::int64_t chunks = (cfg.mc_samples + mc_chunk - 1) / mc_chunk;
  auto chunk_size = [&](std::int64_t c) {
    return std::min(mc_chunk, cfg.mc_samples - c * mc_chunk);
  };

  std::vector<ChunkSums> parts(chunks);
  const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) parts[c] = run_chunk(verts, f, cfg.seed, c, chunk_size(c));
  } else {
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::int64_t c = w; c < chunks; c += workers) {
          parts[c] = run_chunk(verts, f, cfg.seed, c, chunk_size(c));
        }
      }));
    }
    for (auto& j : jobs) j.get();
  }
  // Combine in chunk order so the sum does not depend on scheduling.
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double count = static_cast<double>(cfg.mc_samples);
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq / count - mean * mean) * count / (count - 1.0));
  const double vol = unit_simplex_volume(n) * std::pow(scale, n);
  return {vol * mean, vol * std::sqrt(var / count), cfg.mc_samples, "monte-carlo"};
}

VolumeEstimate monte_carlo_simplex_radialpow(int n, double scale, double p,
                                             const QuadratureConfig& cfg) {
  return monte_carlo_simplex(
      n, scale, [p](const Eigen::VectorXd& x) { return std::pow(1.0 - x.squaredNorm(), -p); },
      cfg);
}

}  // namespace hypervol
