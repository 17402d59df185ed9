#pragma once

#include <vector>

#include "rgvfm/manifold.hpp"

namespace rgvfm {

/// Isotropic Gaussian on a manifold: density proportional to
/// exp(-dist(z, mu)^2 / (2 sigma^2)) w.r.t. the Riemannian volume.
struct RiemannianGaussian {
  ManifoldKind manifold;
  Point mu;
  double sigma = 1.0;
};

/// -dist(z, mu)^2 / (2 sigma^2). The normalizer is omitted: on homogeneous
/// manifolds it does not depend on mu, so it never enters a training loss.
double log_density_unnormalized(const RiemannianGaussian& g, const Point& z);

/// Numerically integrates the unnormalized density over S^2 with the
/// spherical volume element, on an equal-area (azimuth x z) product grid of
/// `resolution` z-bands and 2*resolution azimuth cells, each cell sampled at
/// its 2x2 tensor Gauss points. Deterministic for a fixed resolution.
/// Only Sphere(3) is supported; resolution must be >= 64.
double normalizer_numeric(const RiemannianGaussian& g, int resolution);

/// Fixed-point iteration mu <- exp_mu(mean of log_mu(x_i)), started from the
/// projected ambient mean, stopped when the update step norm drops below
/// `tol`. On the sphere the points must lie in an open hemisphere (checked
/// via max pairwise distance < pi - 0.1) so the minimizer is unique.
Point frechet_mean(const ManifoldKind& kind, const std::vector<Point>& points,
                   double tol = 1e-9, int max_iter = 200);

}  // namespace rgvfm
