#include "hypervol/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hypervol {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_inside_ball(const Point& p, const char* name) {
  if (!(p.squaredNorm() < 1.0)) {
    throw DomainError(std::string("point ") + name + " is not inside the open unit ball");
  }
}

// Roots lo < 0 < hi of |p + lambda*dir|^2 = 1 for p inside the unit ball,
// computed without cancellation.
struct ChordRoots {
  double lo;
  double hi;
};

ChordRoots chord_roots(const Point& p, const Point& dir) {
  const double dd = dir.squaredNorm();
  const double pd = p.dot(dir);
  const double c0 = p.squaredNorm() - 1.0;
  const double disc = pd * pd - dd * c0;
  const double q = -(pd + std::copysign(std::sqrt(disc), pd));
  const double r1 = q / dd;
  const double r2 = c0 / q;
  return r1 < r2 ? ChordRoots{r1, r2} : ChordRoots{r2, r1};
}

void check_face_index(const SimplexParams& params, int k) {
  if (k < 1 || k > params.n()) {
    throw DomainError("face index k=" + std::to_string(k) + " outside 1.." +
                      std::to_string(params.n()));
  }
}

}  // namespace

double cross_ratio_distance(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DomainError("points have different dimensions");
  check_inside_ball(a, "a");
  check_inside_ball(b, "b");
  const Point dir = b - a;
  if (dir.squaredNorm() == 0.0) return 0.0;
  // Chord through a and b meets the sphere at a + lo*dir and a + hi*dir; b is
  // at parameter 1.  Seen from b the same ends sit at lo-1 and hi-1.
  const ChordRoots from_a = chord_roots(a, dir);
  const ChordRoots from_b = chord_roots(b, dir);
  // (cross-ratio - 1) simplifies to (hi - lo) / (-lo * (hi - 1)).
  const double excess = (from_a.hi - from_a.lo) / (-from_a.lo * from_b.hi);
  return 0.5 * std::log1p(excess);
}

std::vector<Point> regular_simplex_vertices(int n, double radius) {
  if (n < 1) throw DomainError("simplex dimension must be positive");
  std::vector<Point> verts;
  if (n == 1) {
    verts.push_back(Point::Constant(1, -radius));
    verts.push_back(Point::Constant(1, radius));
    return verts;
  }
  const double shrink = std::sqrt(1.0 - 1.0 / (double(n) * n));
  for (const Point& w : regular_simplex_vertices(n - 1, 1.0)) {
    Point p(n);
    p.head(n - 1) = shrink * w;
    p(n - 1) = -1.0 / n;
    verts.push_back(radius * p);
  }
  Point top = Point::Zero(n);
  top(n - 1) = radius;
  verts.push_back(top);
  return verts;
}

std::vector<Point> simplex_vertices(const SimplexParams& params) {
  return regular_simplex_vertices(params.n(), params.sin_t());
}

double unit_simplex_volume(int n) {
  return std::exp(0.5 * (n + 1) * std::log(double(n + 1)) - std::lgamma(n + 1.0) -
                  0.5 * n * std::log(double(n)));
}

double atanh_from(double x, double one_minus_x_sq) {
  if (one_minus_x_sq <= 0.0) return inf;
  if (x < 0.5) return std::atanh(x);
  const double one_minus_x = one_minus_x_sq / (1.0 + x);
  return 0.5 * std::log((1.0 + x) / one_minus_x);
}

double OrthoschemeLadder::cosh_r(int k) const {
  return sech_sq_r.at(k - 1) == 0.0 ? inf : 1.0 / std::sqrt(sech_sq_r[k - 1]);
}

double OrthoschemeLadder::cosh_d(int k) const {
  return sech_sq_d.at(k - 1) == 0.0 ? inf : 1.0 / std::sqrt(sech_sq_d[k - 1]);
}

double OrthoschemeLadder::sinh_d(int k) const {
  return sech_sq_d.at(k - 1) == 0.0 ? inf : tanh_d[k - 1] / std::sqrt(sech_sq_d[k - 1]);
}

OrthoschemeLadder ladder(const SimplexParams& params) {
  const int n = params.n();
  const double s = params.sin_t();
  const double c2 = params.cos_sq();
  OrthoschemeLadder lad;
  lad.n = n;
  lad.ideal = params.ideal();
  lad.r.resize(n);
  lad.d.resize(n);
  lad.tanh_r.resize(n);
  lad.tanh_d.resize(n);
  lad.sech_sq_r.resize(n);
  lad.sech_sq_d.resize(n);
  for (int j = 1; j <= n; ++j) {
    // Squared Euclidean distance from the centre to K_j, relative to s^2.
    const double q = double(n - j) / (double(n) * (j + 1));
    const double den = 1.0 - s * s * q;
    const double tr = s * std::sqrt(1.0 - q) / std::sqrt(den);
    const double sr = c2 / den;
    const double td = tr / j;
    const double sd = j == 1 ? sr : (1.0 - td) * (1.0 + td);
    lad.tanh_r[j - 1] = tr;
    lad.sech_sq_r[j - 1] = sr;
    lad.tanh_d[j - 1] = td;
    lad.sech_sq_d[j - 1] = sd;
    lad.r[j - 1] = atanh_from(tr, sr);
    lad.d[j - 1] = atanh_from(td, sd);
  }
  return lad;
}

double circumradius(const SimplexParams& params, int k) {
  check_face_index(params, k);
  return ladder(params).r[k - 1];
}

double edge_length(const SimplexParams& params, int k) {
  check_face_index(params, k);
  return ladder(params).d[k - 1];
}

Eigen::MatrixXd gram_closed_form(const SimplexParams& params) {
  const int n = params.n();
  const double s = params.sin_t();
  const double scale = (double(n) * n - 1.0) * s * s / (double(n) * n - s * s);
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n - 1, n - 1, -scale / (n - 1));
  g.diagonal().setConstant(scale);
  return g;
}

HalfspaceEmbedding halfspace_embedding(const SimplexParams& params) {
  if (params.degenerate() || params.ideal()) {
    throw GeometryError("degenerate half-space embedding: requires 0 < t < pi/2 (" +
                        params.describe() + ")");
  }
  const int n = params.n();
  const double s = params.sin_t();
  const double one_minus_s = params.one_minus_sin();
  const double nn = double(n) * n;

  HalfspaceEmbedding emb;
  emb.n = n;
  emb.sin_t = s;
  emb.sin_alpha = std::sqrt(nn - 1.0) * s / std::sqrt(nn - s * s);
  emb.cos_alpha = n * params.cos_t() / std::sqrt(nn - s * s);
  emb.apex_height_sq = (n + s) * (1.0 + s) / ((n - s) * one_minus_s);
  emb.height_slope = 2.0 * (n + 1) * s / ((n - s) * one_minus_s);
  emb.gamma = (n + s) / one_minus_s;
  emb.c = -(n + 1) * s / ((n - s) * one_minus_s);

  emb.v = regular_simplex_vertices(n - 1, emb.sin_alpha);
  for (const Point& vk : emb.v) {
    Point x(n);
    x.head(n - 1) = vk;
    x(n - 1) = emb.cos_alpha;
    emb.vertices.push_back(x);
  }
  Point top = Point::Zero(n);
  top(n - 1) = std::sqrt(emb.apex_height_sq);
  emb.vertices.push_back(top);

  const double center_scale = (n + s) / (s * one_minus_s);
  for (const Point& vk : emb.v) {
    emb.centers.push_back(center_scale * vk);
    emb.radii.push_back(emb.gamma);
  }
  emb.centers.push_back(Point::Zero(n - 1));
  emb.radii.push_back(1.0);

  Eigen::MatrixXd cols(n - 1, n - 1);
  for (int k = 0; k < n - 1; ++k) cols.col(k) = emb.v[k];
  emb.gram = cols.transpose() * cols;
  return emb;
}

SubsimplexLocation locate_subsimplex(const HalfspaceEmbedding& emb, const Point& v) {
  const int n = emb.n;
  if (v.size() != n - 1) throw DomainError("horizontal point has the wrong dimension");
  constexpr double tol = 1e-12;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd cols(n - 1, n - 1);
    for (int k = 0, col = 0; k < n; ++k) {
      if (k != i) cols.col(col++) = emb.v[k];
    }
    const Eigen::VectorXd w = cols.partialPivLu().solve(v);
    if (w.minCoeff() >= -tol && w.sum() <= 1.0 + tol) {
      SubsimplexLocation loc;
      loc.index = i;
      loc.weights = w.cwiseMax(0.0);
      loc.alpha_sum = std::min(1.0, loc.weights.sum());
      return loc;
    }
  }
  throw DomainError("point lies outside the projected facet");
}

}  // namespace hypervol
