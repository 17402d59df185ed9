#pragma once

#include <Eigen/Core>
#include <random>
#include <vector>

#include "rgvfm/error.hpp"

namespace rgvfm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

enum class ManifoldType { Euclidean, Sphere, FlatTorus };

/// Tagged description of a manifold with closed-form geodesics.
/// `dim` is the ambient dimension: Euclidean(d) and FlatTorus(d) are
/// d-dimensional, Sphere(d) is the unit sphere S^{d-1} embedded in R^d.
/// Torus coordinates live in [0, 2*pi) per component.
struct ManifoldKind {
  ManifoldType type = ManifoldType::Euclidean;
  int dim = 3;

  static ManifoldKind euclidean(int dim);
  static ManifoldKind sphere(int ambient_dim);
  static ManifoldKind flat_torus(int dim);

  bool operator==(const ManifoldKind&) const = default;
};

const char* manifold_type_name(ManifoldType t);

/// A point in ambient coordinates, assumed to satisfy the kind's invariants
/// (unit norm on the sphere, [0, 2*pi) box on the torus).
struct Point {
  Vec coords;
};

/// A tangent vector at `base`, stored in ambient components. On the sphere
/// the vector is orthogonal to the base point.
struct Tangent {
  Point base;
  Vec vec;
};

/// Retraction onto the manifold: normalization for the sphere, identity for
/// Euclidean space, componentwise mod 2*pi for the torus.
Point project(const ManifoldKind& kind, const Vec& ambient);

/// Removes the normal component so the result lies in T_x(M).
Tangent tangent_project(const ManifoldKind& kind, const Point& x, const Vec& ambient);

/// Follows the geodesic from x with initial velocity v for unit time.
Point exp_map(const ManifoldKind& kind, const Point& x, const Tangent& v);

/// Initial velocity of the geodesic from x to y. On the sphere, antipodal
/// pairs (cut locus) are rejected with AntipodalPoints.
Tangent log_map(const ManifoldKind& kind, const Point& x, const Point& y);

double geodesic_distance(const ManifoldKind& kind, const Point& x, const Point& y);

/// exp_x(t * log_x(y)); endpoints are returned exactly at t = 0 and t = 1.
Point geodesic_interpolate(const ManifoldKind& kind, const Point& x0, const Point& x1, double t);

/// Norm induced by the metric; the ambient Euclidean norm for all three kinds.
double metric_norm(const ManifoldKind& kind, const Tangent& v);

/// Uniform samples w.r.t. the Riemannian volume. Supported for Sphere and
/// FlatTorus; the Euclidean kind has no uniform measure and is rejected.
std::vector<Point> uniform_sample(const ManifoldKind& kind, Rng& rng, int n);

/// Wraps an angle difference into (-pi, pi].
double wrap_angle(double d);

/// Componentwise reduction into [0, 2*pi).
double wrap_to_2pi(double a);

}  // namespace rgvfm
