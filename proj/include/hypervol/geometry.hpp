#pragma once

// Closed-form metric data of the regular hyperbolic simplex tau[n,t] in the
// projective (Cayley-Klein) and upper half-space models.

#include <Eigen/Dense>
#include <vector>

#include "hypervol/params.hpp"

namespace hypervol {

using Point = Eigen::VectorXd;

/// Hyperbolic distance between two points of the open unit ball, read off the
/// cross-ratio of the points with the two ends of their chord.
double cross_ratio_distance(const Point& a, const Point& b);

/// Vertices of the unit-circumradius regular simplex S(n), scaled by `radius`.
/// The last vertex sits on the positive last axis; the others are built by
/// recursion on the dimension, so the output is reproducible bit for bit.
std::vector<Point> regular_simplex_vertices(int n, double radius = 1.0);

/// Vertices of (sin t) S(n), the projective image of tau[n,t].
std::vector<Point> simplex_vertices(const SimplexParams& params);

/// Euclidean n-volume of S(n).
double unit_simplex_volume(int n);

/// atanh(x) given x in [0, 1] together with 1 - x^2, which is what the closed
/// forms deliver accurately near the ideal point.  Returns +inf at x = 1.
double atanh_from(double x, double one_minus_x_sq);

/// Circumradii r_1..r_n of the k-faces and edge lengths d_1..d_n of the
/// fundamental orthoscheme (index k-1 holds the value for k).  d_k is the
/// distance between the centres of consecutive faces K_{k-1}, K_k with
/// K_0 = E_1 and K_n = O.
struct OrthoschemeLadder {
  int n = 0;
  bool ideal = false;
  std::vector<double> r;
  std::vector<double> d;
  std::vector<double> tanh_r;
  std::vector<double> tanh_d;
  // 1 - tanh^2, i.e. 1/cosh^2; zero exactly where the length is infinite.
  std::vector<double> sech_sq_r;
  std::vector<double> sech_sq_d;

  double cosh_r(int k) const;
  double cosh_d(int k) const;
  double sinh_d(int k) const;
};

double circumradius(const SimplexParams& params, int k);
double edge_length(const SimplexParams& params, int k);
OrthoschemeLadder ladder(const SimplexParams& params);

/// Half-space picture of tau[n,t] normalised so that the facet opposite the
/// top vertex lies on the unit hemisphere centred at the origin.
struct HalfspaceEmbedding {
  int n = 0;
  double sin_t = 0.0;
  /// n+1 points of R^n; the first n share height cos(alpha), the last is the
  /// top vertex on the vertical axis.
  std::vector<Point> vertices;
  /// Horizontal parts of the first n vertices (points of R^(n-1)).
  std::vector<Point> v;
  double sin_alpha = 0.0;
  double cos_alpha = 0.0;
  /// Square of the top-vertex height, (n+s)(1+s)/((n-s)(1-s)).
  double apex_height_sq = 0.0;
  /// 2(n+1)s/((n-s)(1-s)); the upper z-bound drops by this times alpha(v).
  double height_slope = 0.0;
  /// Centres of the n+1 facet spheres on the boundary hyperplane.  Facet i
  /// (i < n) omits vertex i and has radius gamma; facet n is the unit sphere.
  std::vector<Point> centers;
  std::vector<double> radii;
  double gamma = 0.0;
  /// Right-hand side of the linear system fixing the centres.
  double c = 0.0;
  /// Gram matrix of v_1..v_{n-1}.
  Eigen::MatrixXd gram;
};

HalfspaceEmbedding halfspace_embedding(const SimplexParams& params);

/// Gram matrix R(n-1) in closed form.
Eigen::MatrixXd gram_closed_form(const SimplexParams& params);

/// Location of a horizontal point in the dissection of the projected facet
/// into the n simplices eps_i = conv(0, v_j : j != i).
struct SubsimplexLocation {
  int index = -1;                // i, zero based
  Eigen::VectorXd weights;       // alpha_j for j != i, in increasing j order
  double alpha_sum = 0.0;        // alpha(v)
};

/// Finds the sub-simplex containing `v`; ties go to the lowest index.  Throws
/// DomainError when v lies outside the projected facet.
SubsimplexLocation locate_subsimplex(const HalfspaceEmbedding& emb, const Point& v);

}  // namespace hypervol
