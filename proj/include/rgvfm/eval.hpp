#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "rgvfm/data.hpp"
#include "rgvfm/manifold.hpp"

namespace rgvfm {

inline constexpr int kNormBins = 50;
inline constexpr double kNormHistLo = 0.5;
inline constexpr double kNormHistHi = 1.5;

struct EvalReport {
  long n = 0;
  double norm_mean = 0.0;
  double norm_std = 0.0;
  std::vector<long> norm_histogram;  // kNormBins bins over [lo, hi]; outliers land in the edge bins
  double on_cell_fraction = 0.0;
  double occupancy_l1 = 0.0;  // L1 gap between the on-cell histogram and the uniform target
  std::optional<double> endpoint_residual_mean;
};

/// Sample statistics for the spherical checkerboard experiment. Cell
/// occupancy is computed on the radial projection of each sample, so slightly
/// off-sphere points are binned by their direction.
EvalReport evaluate(std::span<const Vec> samples, const ManifoldKind& kind,
                    const CheckerboardGrid& grid, std::span<const double> residuals = {});

void write_report(const std::filesystem::path& path, const EvalReport& report);
void write_norm_histogram(const std::filesystem::path& path, const EvalReport& report);

}  // namespace rgvfm
