#pragma once

#include <utility>
#include <vector>

#include "rgvfm/manifold.hpp"
#include "rgvfm/variant.hpp"

namespace rgvfm {

enum class Parity { Even, Odd };

/// Equal-area checkerboard on S^2: n_azimuth cells over phi in [0, 2*pi) and
/// n_z bands over z = cos(theta) in [-1, 1]. Both counts must be even so the
/// parity pattern closes seamlessly across the phi = 0 wrap.
struct CheckerboardGrid {
  int n_azimuth = 8;
  int n_z = 4;
  Parity parity = Parity::Even;
};

void validate_grid(const CheckerboardGrid& grid);

struct CellIndex {
  int azimuth = 0;
  int z = 0;
};

/// Equal-area bin of a sphere point; poles are clamped into the outer bands.
CellIndex cell_index(const CheckerboardGrid& grid, const Point& p);

/// True iff the cell parity (i_azimuth + i_z) mod 2 matches the grid parity.
bool is_on_cell(const CheckerboardGrid& grid, const Point& p);

/// Number of "on" cells (half of all cells).
int on_cell_count(const CheckerboardGrid& grid);

/// Rejection-samples the checkerboard target: uniform on S^2, kept iff the
/// point lands on an on-cell. Expected acceptance rate 1/2.
std::vector<Point> sample_checkerboard(const CheckerboardGrid& grid, Rng& rng, int n);

/// Variant prior: iid uniform on the cube [-1,1]^3 for the ambient-prior
/// models, uniform on S^2 for the manifold-prior ones.
std::vector<Vec> sample_prior(Variant variant, Rng& rng, int n);

/// Equal-area chart (phi, z) used for both binning and figure export.
std::pair<double, double> unwrap(const Point& p);

/// Inverse chart; exact away from the poles.
Point wrap_to_sphere(double phi, double z);

}  // namespace rgvfm
