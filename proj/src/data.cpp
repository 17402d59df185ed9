#include "rgvfm/data.hpp"

#include <cmath>

namespace rgvfm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void validate_grid(const CheckerboardGrid& grid) {
  if (grid.n_azimuth < 2 || grid.n_azimuth % 2 != 0) {
    throw Error(ErrorCode::InvalidConfig, "grid n_azimuth must be even and >= 2");
  }
  if (grid.n_z < 2 || grid.n_z % 2 != 0) {
    throw Error(ErrorCode::InvalidConfig, "grid n_z must be even and >= 2");
  }
}

CellIndex cell_index(const CheckerboardGrid& grid, const Point& p) {
  const auto [phi, z] = unwrap(p);
  int i_az = static_cast<int>(std::floor(phi / kTwoPi * grid.n_azimuth));
  int i_z = static_cast<int>(std::floor((z + 1.0) / 2.0 * grid.n_z));
  i_az = std::clamp(i_az, 0, grid.n_azimuth - 1);
  i_z = std::clamp(i_z, 0, grid.n_z - 1);
  return {i_az, i_z};
}

bool is_on_cell(const CheckerboardGrid& grid, const Point& p) {
  CellIndex c = cell_index(grid, p);
  int want = (grid.parity == Parity::Even) ? 0 : 1;
  return (c.azimuth + c.z) % 2 == want;
}

int on_cell_count(const CheckerboardGrid& grid) { return grid.n_azimuth * grid.n_z / 2; }

std::vector<Point> sample_checkerboard(const CheckerboardGrid& grid, Rng& rng, int n) {
  validate_grid(grid);
  if (n < 1) throw Error(ErrorCode::EmptyInput, "sample count must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  Vec v(3);
  while (static_cast<int>(out.size()) < n) {
    v[0] = normal(rng);
    v[1] = normal(rng);
    v[2] = normal(rng);
    double norm = v.norm();
    if (norm < 1e-6) continue;
    Point p{v / norm};
    if (is_on_cell(grid, p)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vec> sample_prior(Variant variant, Rng& rng, int n) {
  if (n < 1) throw Error(ErrorCode::EmptyInput, "sample count must be >= 1");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  if (variant_prior_on_manifold(variant)) {
    auto pts = uniform_sample(ManifoldKind::sphere(3), rng, n);
    for (Point& p : pts) out.push_back(std::move(p.coords));
    return out;
  }
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < n; ++k) {
    Vec v(3);
    v[0] = uni(rng);
    v[1] = uni(rng);
    v[2] = uni(rng);
    out.push_back(std::move(v));
  }
  return out;
}

std::pair<double, double> unwrap(const Point& p) {
  if (p.coords.size() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "unwrap expects a point in R^3");
  }
  double phi = wrap_to_2pi(std::atan2(p.coords[1], p.coords[0]));
  return {phi, p.coords[2]};
}

Point wrap_to_sphere(double phi, double z) {
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec v(3);
  v[0] = rho * std::cos(phi);
  v[1] = rho * std::sin(phi);
  v[2] = z;
  return {v};
}

}  // namespace rgvfm
