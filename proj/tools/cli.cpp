#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "hypervol/bounds.hpp"
#include "hypervol/geometry.hpp"
#include "hypervol/volume_forms.hpp"

namespace hypervol::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

struct Target {
  int n = 3;
  double t = 0.0;
  double sin_t = 0.0;
  CLI::Option* t_opt = nullptr;
  CLI::Option* s_opt = nullptr;

  bool given() const { return t_opt->count() > 0 || s_opt->count() > 0; }
  SimplexParams params() const {
    if ((t_opt->count() > 0) == (s_opt->count() > 0)) {
      throw DomainError("give exactly one of --t or --sin-t");
    }
    return t_opt->count() > 0 ? SimplexParams::from_angle(n, t)
                              : SimplexParams::from_sine(n, sin_t);
  }
};

void add_target(CLI::App* app, Target& tg, bool n_required = true) {
  auto* n = app->add_option("--n", tg.n, "dimension n >= 2");
  if (n_required) n->required();
  tg.t_opt = app->add_option("--t", tg.t, "t in radians, 0 <= t <= pi/2");
  tg.s_opt = app->add_option("--sin-t", tg.sin_t, "sin t in [0, 1]");
  tg.t_opt->excludes(tg.s_opt);
}

struct Tuning {
  double tol = 1e-10;
  std::uint64_t seed = QuadratureConfig{}.seed;
  std::string precision = "standard";
  std::int64_t mc_samples = 1'000'000;
  int max_subdivisions = QuadratureConfig{}.max_subdivisions;

  QuadratureConfig config() const {
    QuadratureConfig cfg;
    cfg.rel_tol = tol;
    cfg.max_subdivisions = max_subdivisions;
    cfg.seed = seed;
    cfg.mc_samples = mc_samples;
    cfg.precision = precision == "extended" ? Precision::extended : Precision::standard;
    cfg.validate();
    return cfg;
  }
};

void add_tuning(CLI::App* app, Tuning& tu) {
  app->add_option("--tol", tu.tol, "relative quadrature tolerance");
  app->add_option("--seed", tu.seed, "seed for sampled checks and Monte Carlo");
  app->add_option("--precision", tu.precision, "standard or extended")
      ->check(CLI::IsMember({"standard", "extended"}));
  app->add_option("--max-subdivisions", tu.max_subdivisions, "panel limit per 1-D integral");
}

int thread_count() {
  if (const char* env = std::getenv("HYPERVOL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    throw DomainError("HYPERVOL_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void print_estimate(std::ostream& out, const std::string& name, const VolumeEstimate& e,
                    const char* status) {
  out << "method=" << name << " value=" << format_number(e.value)
      << " error=" << format_number(e.error_estimate) << " evals=" << e.n_evals
      << " status=" << status << "\n";
}

// volume ----------------------------------------------------------------

int cmd_volume(const Target& tg, const Tuning& tu, const std::string& method, std::ostream& out) {
  const SimplexParams p = tg.params();
  const QuadratureConfig cfg = tu.config();
  std::vector<std::string> methods;
  if (method == "all") {
    methods = {"projective", "orthoscheme", "halfspace"};
  } else {
    methods = {method};
  }
  int code = exit_ok;
  std::vector<double> values;
  for (const auto& m : methods) {
    try {
      VolumeEstimate e;
      if (m == "projective") {
        e = volume_projective(p, cfg);
      } else if (m == "orthoscheme") {
        e = volume_orthoscheme(p, cfg);
      } else if (m == "halfspace") {
        e = volume_halfspace(p, cfg);
      } else {
        e = monte_carlo_simplex_radialpow(p.n(), p.sin_t(), 0.5 * (p.n() + 1), cfg);
      }
      print_estimate(out, m, e, "ok");
      values.push_back(e.value);
    } catch (const ConvergenceError& e) {
      print_estimate(out, m, e.best(), "nonconverged");
      code = exit_convergence;
    } catch (const DomainError& e) {
      if (methods.size() == 1) throw;
      out << "method=" << m << " status=skipped reason=\"" << e.what() << "\"\n";
    }
  }
  if (methods.size() > 1) {
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        worst = std::max(worst, rel_diff(values[i], values[j]));
      }
    }
    out << "max_rel_diff=" << format_number(worst) << "\n";
  }
  return code;
}

// ratio / sweep ---------------------------------------------------------

struct RatioRow {
  int n = 0;
  double t = 0.0;
  double ratio = 0.0;
  double ratio_err = 0.0;
  GrowthBounds bounds;
  double volume = 0.0;
  double facet = 0.0;
  std::string flag;
};

RatioRow ratio_row(const SimplexParams& p, const QuadratureConfig& cfg) {
  RatioRow row;
  row.n = p.n();
  row.t = p.t();
  row.bounds = growth_bounds(p);
  GrowthRatio g;
  try {
    g = growth_ratio_parts(p, cfg);
    row.flag = "ok";
  } catch (const ConvergenceError&) {
    const double nan = std::nan("");
    g.volume = g.facet = g.ratio = {nan, nan, 0, "nonconverged"};
    row.flag = "nonconverged";
  }
  row.ratio = g.ratio.value;
  row.ratio_err = g.ratio.error_estimate;
  row.volume = g.volume.value;
  row.facet = g.facet.value;
  if (row.flag == "ok") {
    const double slack = row.ratio_err + 1e-13 * std::abs(row.ratio);
    if (row.bounds.lower - row.ratio > slack || row.ratio - row.bounds.upper > slack) {
      row.flag = "violation";
    }
  }
  return row;
}

int cmd_ratio(const Target& tg, const Tuning& tu, std::ostream& out) {
  const SimplexParams p = tg.params();
  const QuadratureConfig cfg = tu.config();
  if (p.n() < 3) throw DomainError("ratio needs n >= 3");
  if (p.degenerate()) throw DomainError("ratio undefined at t=0");
  const GrowthRatio g = growth_ratio_parts(p, cfg);
  const GrowthBounds b = growth_bounds(p);
  const double slack = g.ratio.error_estimate + 1e-13 * std::abs(g.ratio.value);
  const bool ok = b.lower - g.ratio.value <= slack && g.ratio.value - b.upper <= slack;
  out << "n=" << p.n() << "\n"
      << "t=" << format_number(p.t()) << "\n"
      << "ratio=" << format_number(g.ratio.value) << "\n"
      << "ratio_err=" << format_number(g.ratio.error_estimate) << "\n"
      << "lower=" << format_number(b.lower) << "\n"
      << "upper=" << format_number(b.upper) << "\n"
      << "hm_lower=" << format_number(b.hm_lower) << "\n"
      << "hm_upper=" << format_number(b.hm_upper) << "\n"
      << "V_n=" << format_number(g.volume.value) << "\n"
      << "V_facet=" << format_number(g.facet.value) << "\n"
      << "SANDWICH=" << (ok ? "ok" : "VIOLATION") << "\n";
  return ok ? exit_ok : exit_violation;
}

const char* const sweep_columns[] = {"n",     "t",        "ratio",    "ratio_err",
                                     "lower", "upper",    "hm_lower", "hm_upper",
                                     "V_n",   "V_facet",  "sandwich_flag"};

struct SweepOptions {
  std::vector<int> n_list;
  double t_start = 0.0, t_stop = 0.0, t_step = 0.0;
  std::vector<double> t_list;
  std::string format = "csv";
  std::string out_path;
  CLI::Option* range_opt = nullptr;
};

std::vector<double> sweep_grid(const SweepOptions& so) {
  if (!so.t_list.empty()) return so.t_list;
  if (!(so.t_step > 0.0) || so.t_stop < so.t_start) {
    throw DomainError("t grid needs --t-step > 0 and --t-stop >= --t-start");
  }
  const auto count = static_cast<long>(std::floor((so.t_stop - so.t_start) / so.t_step + 1e-9)) + 1;
  std::vector<double> ts;
  for (long i = 0; i < count; ++i) ts.push_back(so.t_start + i * so.t_step);
  return ts;
}

void write_sweep(std::ostream& os, const std::vector<RatioRow>& rows, const std::string& format) {
  auto fields = [](const RatioRow& r) {
    return std::vector<std::string>{std::to_string(r.n),         format_number(r.t),
                                    format_number(r.ratio),      format_number(r.ratio_err),
                                    format_number(r.bounds.lower), format_number(r.bounds.upper),
                                    format_number(r.bounds.hm_lower),
                                    format_number(r.bounds.hm_upper),
                                    format_number(r.volume),     format_number(r.facet),
                                    r.flag};
  };
  if (format == "csv") {
    for (std::size_t c = 0; c < std::size(sweep_columns); ++c) {
      os << (c ? "," : "") << sweep_columns[c];
    }
    os << "\n";
    for (const auto& r : rows) {
      const auto f = fields(r);
      for (std::size_t c = 0; c < f.size(); ++c) os << (c ? "," : "") << f[c];
      os << "\n";
    }
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RatioRow& r = rows[i];
    const double nums[] = {r.t, r.ratio, r.ratio_err, r.bounds.lower, r.bounds.upper,
                           r.bounds.hm_lower, r.bounds.hm_upper, r.volume, r.facet};
    os << (i ? ",\n " : "\n ") << "{\"n\": " << r.n;
    for (std::size_t c = 0; c < std::size(nums); ++c) {
      os << ", \"" << sweep_columns[c + 1] << "\": " << json_number(nums[c]);
    }
    os << ", \"sandwich_flag\": \"" << r.flag << "\"}";
  }
  os << "\n]\n";
}

int cmd_sweep(const SweepOptions& so, const Tuning& tu, std::ostream& out) {
  const QuadratureConfig cfg = tu.config();
  if (so.n_list.empty()) throw DomainError("empty n list");
  if (so.t_list.empty() && so.range_opt->count() == 0) throw DomainError("empty t grid");
  const std::vector<double> ts = sweep_grid(so);
  if (ts.empty()) throw DomainError("empty t grid");
  std::vector<SimplexParams> cells;
  for (int n : so.n_list) {
    if (n < 3) throw DomainError("sweep needs n >= 3");
    for (double t : ts) {
      const SimplexParams p = SimplexParams::from_angle(n, t);
      if (p.degenerate()) throw DomainError("ratio undefined at t=0");
      cells.push_back(p);
    }
  }

  std::vector<RatioRow> rows(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  const int workers = std::min<int>(thread_count(), static_cast<int>(cells.size()));
  auto work = [&](int w) {
    for (std::size_t i = w; i < cells.size(); i += workers) {
      try {
        rows[i] = ratio_row(cells[i], cfg);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, work, w));
    for (auto& j : jobs) j.get();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  if (so.out_path.empty()) {
    write_sweep(out, rows, so.format);
  } else {
    std::ofstream file(so.out_path);
    if (!file) throw DomainError("cannot open " + so.out_path);
    write_sweep(file, rows, so.format);
  }
  bool violation = false, nonconverged = false;
  for (const auto& r : rows) {
    violation |= r.flag == "violation";
    nonconverged |= r.flag == "nonconverged";
  }
  if (violation) return exit_violation;
  return nonconverged ? exit_convergence : exit_ok;
}

// check -----------------------------------------------------------------

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void check(const std::string& name, double residual, double tol) {
    const bool pass = residual <= tol;
    failed_ |= !pass;
    out_ << (pass ? "PASS " : "FAIL ") << name << " residual=" << format_number(residual)
         << " tol=" << format_number(tol) << "\n";
  }
  void skip(const std::string& name, const std::string& why) {
    out_ << "SKIPPED " << name << " (" << why << ")\n";
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

Point face_center(const std::vector<Point>& verts, int k) {
  Point c = Point::Zero(verts.front().size());
  for (int j = 0; j <= k; ++j) c += verts[j];
  return c / (k + 1);
}

void check_geometry(const SimplexParams& p, Report& rep) {
  const int n = p.n();
  const OrthoschemeLadder lad = ladder(p);
  double chain = std::abs(lad.tanh_d[n - 1] - p.sin_t() / n);
  for (int k = 1; k < n; ++k) {
    chain = std::max(chain, std::abs(lad.sech_sq_r[k] - lad.sech_sq_d[k] * lad.sech_sq_r[k - 1]));
  }
  rep.check("ladder_chain", chain, 1e-12);

  if (p.ideal()) {
    rep.skip("ladder_distances", "vertices at infinity");
  } else {
    // K_0 = E_1, K_k = centre of the k-face, K_n = O.
    const auto verts = simplex_vertices(p);
    std::vector<Point> k_pts;
    for (int k = 0; k < n; ++k) k_pts.push_back(face_center(verts, k));
    k_pts.push_back(Point::Zero(n));
    double worst = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double r = cross_ratio_distance(k_pts[0], k_pts[k]);
      const double d = cross_ratio_distance(k_pts[k - 1], k_pts[k]);
      worst = std::max(worst, std::abs(r - lad.r[k - 1]) / std::max(1.0, lad.r[k - 1]));
      worst = std::max(worst, std::abs(d - lad.d[k - 1]) / std::max(1.0, lad.d[k - 1]));
    }
    rep.check("ladder_distances", worst, 1e-10);
  }
}

void check_halfspace(const SimplexParams& p, const Tuning& tu, Report& rep) {
  const int n = p.n();
  if (p.degenerate() || p.ideal()) {
    const char* why = p.degenerate() ? "degenerate" : "ideal";
    for (const char* name : {"gram_closed_form", "gamma", "sin_alpha", "zn_sandwich"}) {
      rep.skip(name, why);
    }
    return;
  }
  const HalfspaceEmbedding emb = halfspace_embedding(p);
  const double s = p.sin_t();
  const Eigen::MatrixXd g = gram_closed_form(p);
  rep.check("gram_closed_form", (emb.gram - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff(),
            1e-12);

  // The apex lies on every facet sphere that does not omit it.
  const double center_norm = (n + s) / (s * p.one_minus_sin()) * emb.sin_alpha;
  const double gamma = std::sqrt(center_norm * center_norm + emb.apex_height_sq);
  double gres = std::abs(gamma - (n + s) / p.one_minus_sin()) / gamma;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= n; ++k) {
      if (k == i) continue;
      Point x = emb.vertices[k];
      x.head(n - 1) -= emb.centers[i];
      gres = std::max(gres, std::abs(x.squaredNorm() - gamma * gamma) / (gamma * gamma));
    }
  }
  rep.check("gamma", gres, 1e-12);

  const OrthoschemeLadder lad = ladder(p);
  rep.check("sin_alpha", std::abs(emb.sin_alpha - lad.tanh_r[n - 2]), 1e-12);

  // Random horizontal points of the projected facet; every height in
  // [lo, hi] must satisfy the facet-sphere inequalities.
  std::mt19937_64 rng(tu.seed);
  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0;
  const int samples = 1000;
  for (int it = 0; it < samples; ++it) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) total += (x = expo(rng));
    Point v = Point::Zero(n - 1);
    for (int k = 0; k < n; ++k) v += (w[k] / total) * emb.v[k];
    const ZnBounds zb = zn_bounds(emb, v);
    worst = std::max(worst, zb.lo - zb.hi);
    for (double z : {zb.lo, 0.5 * (zb.lo + zb.hi), zb.hi}) {
      worst = std::max(worst, 1.0 - (v.squaredNorm() + z * z));
      for (int i = 0; i < n; ++i) {
        const double dist2 = (v - emb.centers[i]).squaredNorm() + z * z;
        worst = std::max(worst, (dist2 - gamma * gamma) / (gamma * gamma));
      }
    }
  }
  rep.check("zn_sandwich", std::max(worst, 0.0), 1e-9);
}

int check_volumes(const SimplexParams& p, const QuadratureConfig& cfg, Report& rep,
                  std::ostream& out) {
  try {
    std::vector<VolumeEstimate> vs{volume_projective(p, cfg), volume_orthoscheme(p, cfg)};
    const bool half_ok =
        !p.degenerate() && !p.ideal() && half_pi - p.t() >= halfspace_ideal_margin;
    if (half_ok) vs.push_back(volume_halfspace(p, cfg));
    double worst = 0.0, tol = 1e-6;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        worst = std::max(worst, rel_diff(vs[i].value, vs[j].value));
        const double scale = std::max(std::abs(vs[i].value), std::abs(vs[j].value));
        if (scale > 0) tol = std::max(tol, (vs[i].error_estimate + vs[j].error_estimate) / scale);
      }
    }
    rep.check(half_ok ? "cross_model" : "cross_model(projective,orthoscheme)", worst, tol);
    if (!half_ok) rep.skip("halfspace_volume", p.degenerate() ? "degenerate" : "ideal");

    if (p.n() >= 3) {
      const double lb = lower_bound(p), lbl = lower_bound_from_ladder(p);
      rep.check("lower_bound_ladder", lb == 0.0 ? std::abs(lbl) : std::abs(lb - lbl) / lb, 1e-12);
      if (p.degenerate()) {
        rep.skip("sandwich", "ratio undefined at t=0");
      } else {
        const auto r = growth_ratio(p, cfg);
        const GrowthBounds b = growth_bounds(p);
        const double over = std::max(b.lower - r.value, r.value - b.upper);
        rep.check("sandwich", std::max(over, 0.0), r.error_estimate + 1e-13 * r.value);
      }
    }
  } catch (const ConvergenceError& e) {
    out << "ERROR quadrature: " << e.what() << "\n";
    return exit_convergence;
  }
  return exit_ok;
}

void run_audit(int n, std::ostream& out) {
  const auto ts = default_audit_sequence();
  const LimitAudit a = limit_audit(n, ts);
  out << "limit_audit n=" << n << "\n";
  out << "eps,t,cos_t_atanh_sin_t,cos_t_atanh_tanh_d1\n";
  for (const auto& r : a.rows) {
    out << format_number(r.eps) << "," << format_number(r.t) << "," << format_number(r.product)
        << "," << format_number(r.bound_product) << "\n";
  }
  out << "empirical_limit=" << format_number(a.fitted_limit)
      << " (fit a + b*eps*log(1/eps) + c*eps, constant term)\n";
  out << "empirical_limit_bound_product=" << format_number(a.fitted_bound_limit) << "\n";
  out << "claimed_limit=" << format_number(a.claimed_limit) << " (value asserted in the audited note)\n";
  out << "monotone_decreasing=" << (a.monotone_decreasing ? "yes" : "no") << "\n";
  if (std::abs(a.fitted_limit - a.claimed_limit) > 1e-2) {
    out << "CONFLICT: empirical limit " << format_number(a.fitted_limit)
        << " disagrees with claimed limit " << format_number(a.claimed_limit) << "\n";
  }
}

int cmd_check(const Target& tg, const Tuning& tu, bool audit, std::ostream& out) {
  if (audit && !tg.given()) {
    run_audit(tg.n, out);
    return exit_ok;
  }
  const SimplexParams p = tg.params();
  const QuadratureConfig cfg = tu.config();
  out << "check " << p.describe() << "\n";
  Report rep(out);
  check_geometry(p, rep);
  check_halfspace(p, tu, rep);
  const int code = check_volumes(p, cfg, rep, out);
  if (audit) run_audit(std::max(p.n(), 3), out);
  if (code != exit_ok) return code;
  return rep.failed() ? exit_violation : exit_ok;
}

// ladder ----------------------------------------------------------------

int cmd_ladder(const Target& tg, const std::string& format, std::ostream& out) {
  const SimplexParams p = tg.params();
  const OrthoschemeLadder lad = ladder(p);
  if (format == "csv") {
    out << "k,r,tanh_r,d,tanh_d\n";
    for (int k = 1; k <= p.n(); ++k) {
      out << k << "," << format_number(lad.r[k - 1]) << "," << format_number(lad.tanh_r[k - 1])
          << "," << format_number(lad.d[k - 1]) << "," << format_number(lad.tanh_d[k - 1]) << "\n";
    }
    return exit_ok;
  }
  // JSON has no infinity; write it as a string.
  auto num = [](double v) { return std::isinf(v) ? std::string("\"inf\"") : format_number(v); };
  out << "[";
  for (int k = 1; k <= p.n(); ++k) {
    out << (k > 1 ? ",\n " : "\n ") << "{\"k\": " << k << ", \"r\": " << num(lad.r[k - 1])
        << ", \"tanh_r\": " << num(lad.tanh_r[k - 1]) << ", \"d\": " << num(lad.d[k - 1])
        << ", \"tanh_d\": " << num(lad.tanh_d[k - 1]) << "}";
  }
  out << "\n]\n";
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volumes and volume growth of regular hyperbolic simplices"};
  app.require_subcommand(1);

  Tuning tu;
  Target vol_t, ratio_t, check_t, ladder_t;
  std::string method = "projective";
  auto* vol = app.add_subcommand("volume", "volume of tau[n,t] by one or all integral forms");
  add_target(vol, vol_t);
  add_tuning(vol, tu);
  vol->add_option("--method", method, "projective|orthoscheme|halfspace|montecarlo|all")
      ->check(CLI::IsMember({"projective", "orthoscheme", "halfspace", "montecarlo", "all"}));
  vol->add_option("--mc-samples", tu.mc_samples, "Monte Carlo sample count");

  auto* ratio = app.add_subcommand("ratio", "volume growth with its bounds");
  add_target(ratio, ratio_t);
  add_tuning(ratio, tu);

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "growth ratio and bounds on an (n, t) grid");
  sweep->add_option("--n", so.n_list, "dimensions, comma separated")->delimiter(',')->required();
  auto* start = sweep->add_option("--t-start", so.t_start, "first t");
  auto* stop = sweep->add_option("--t-stop", so.t_stop, "last t (inclusive)");
  auto* step = sweep->add_option("--t-step", so.t_step, "t increment");
  auto* list = sweep->add_option("--t-list", so.t_list, "explicit t values")->delimiter(',');
  start->needs(stop)->needs(step);
  stop->needs(start);
  step->needs(start);
  list->excludes(start);
  so.range_opt = start;
  sweep->add_option("--format", so.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", so.out_path, "write rows to this file instead of stdout");
  add_tuning(sweep, tu);

  bool audit = false;
  auto* check = app.add_subcommand("check", "evaluate the structural and cross-model invariants");
  add_target(check, check_t, false);
  add_tuning(check, tu);
  check->add_flag("--audit-limits", audit, "evaluate cos t * atanh(sin t) toward t = pi/2");

  std::string ladder_format = "csv";
  auto* lad = app.add_subcommand("ladder", "circumradius and edge-length ladders");
  add_target(lad, ladder_t);
  lad->add_option("--format", ladder_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_domain;
  }

  try {
    if (*vol) return cmd_volume(vol_t, tu, method, out);
    if (*ratio) return cmd_ratio(ratio_t, tu, out);
    if (*sweep) return cmd_sweep(so, tu, out);
    if (*check) return cmd_check(check_t, tu, audit, out);
    if (*lad) return cmd_ladder(ladder_t, ladder_format, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    out << "best_estimate=" << format_number(e.best().value)
        << " error=" << format_number(e.best().error_estimate) << "\n";
    return exit_convergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }
  return exit_domain;
}

}  // namespace hypervol::cli
