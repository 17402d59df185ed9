#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rgvfm/manifold.hpp"
#include "rgvfm/sampler.hpp"

namespace rgvfm {

/// All emitted files are space-delimited text with a one-line header.
/// Doubles are printed with 17 significant digits so re-runs are
/// byte-identical and values re-parse exactly.
std::string format_double(double v);

void write_samples(const std::filesystem::path& path, std::span<const Vec> samples);
std::vector<Vec> read_samples(const std::filesystem::path& path);

void write_residuals(const std::filesystem::path& path, std::span<const double> residuals);
std::vector<double> read_residuals(const std::filesystem::path& path);

void write_trajectories(const std::filesystem::path& path, std::span<const Trajectory> trajs);
std::vector<Trajectory> read_trajectories(const std::filesystem::path& path);

void write_loss_curve(const std::filesystem::path& path, std::span<const double> losses,
                      std::span<const long> antipodal_clamped);

}  // namespace rgvfm
