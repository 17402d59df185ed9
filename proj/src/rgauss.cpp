#include "rgvfm/rgauss.hpp"

#include <cmath>

namespace rgvfm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Offsets of the two Gauss-Legendre nodes inside a unit cell.
constexpr double kGaussLo = 0.21132486540518711775;  // 1/2 - 1/(2*sqrt(3))
constexpr double kGaussHi = 0.78867513459481288225;
}  // namespace

double log_density_unnormalized(const RiemannianGaussian& g, const Point& z) {
  if (g.sigma <= 0.0) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  double d = geodesic_distance(g.manifold, z, g.mu);
  return -d * d / (2.0 * g.sigma * g.sigma);
}

double normalizer_numeric(const RiemannianGaussian& g, int resolution) {
  if (g.manifold.type != ManifoldType::Sphere || g.manifold.dim != 3) {
    throw Error(ErrorCode::UnsupportedManifold, "normalizer quadrature is implemented for S^2 only");
  }
  if (resolution < 64) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 64");
  if (g.sigma <= 0.0) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");

  const int n_z = resolution;
  const int n_az = 2 * resolution;
  const double dz = 2.0 / n_z;
  const double dphi = kTwoPi / n_az;
  const double cell_weight = dz * dphi / 4.0;  // 4 Gauss points per cell
  const double inv2s2 = 1.0 / (2.0 * g.sigma * g.sigma);
  const double mx = g.mu.coords[0], my = g.mu.coords[1], mz = g.mu.coords[2];

  double sum = 0.0;
  for (int j = 0; j < n_z; ++j) {
    const double z_lo = -1.0 + j * dz;
    const double zs[2] = {z_lo + kGaussLo * dz, z_lo + kGaussHi * dz};
    for (const double z : zs) {
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double zmz = z * mz;
      double band = 0.0;
      for (int i = 0; i < n_az; ++i) {
        const double phi_lo = i * dphi;
        const double phis[2] = {phi_lo + kGaussLo * dphi, phi_lo + kGaussHi * dphi};
        for (const double phi : phis) {
          const double dot = rho * (std::cos(phi) * mx + std::sin(phi) * my) + zmz;
          const double theta = std::acos(std::clamp(dot, -1.0, 1.0));
          band += std::exp(-theta * theta * inv2s2);
        }
      }
      sum += band;
    }
  }
  return sum * cell_weight;
}

Point frechet_mean(const ManifoldKind& kind, const std::vector<Point>& points,
                   double tol, int max_iter) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "frechet_mean needs at least one point");
  if (points.size() == 1) return points.front();

  if (kind.type == ManifoldType::Sphere) {
    for (std::size_t a = 0; a < points.size(); ++a) {
      for (std::size_t b = a + 1; b < points.size(); ++b) {
        if (geodesic_distance(kind, points[a], points[b]) >= M_PI - 0.1) {
          throw Error(ErrorCode::InvalidArgument,
                      "points must lie in an open hemisphere for a unique mean");
        }
      }
    }
  }

  Vec acc = Vec::Zero(kind.dim);
  for (const Point& p : points) acc += p.coords;
  Point mu = project(kind, acc / static_cast<double>(points.size()));

  const double inv_n = 1.0 / static_cast<double>(points.size());
  for (int it = 0; it < max_iter; ++it) {
    Vec step = Vec::Zero(kind.dim);
    for (const Point& p : points) step += log_map(kind, mu, p).vec;
    step *= inv_n;
    double norm = step.norm();
    mu = exp_map(kind, mu, Tangent{mu, step});
    if (norm < tol) return mu;
  }
  throw Error(ErrorCode::NoConvergence, "frechet_mean did not converge");
}

}  // namespace rgvfm
