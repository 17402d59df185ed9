#pragma once

#include <filesystem>
#include <span>

#include "rgvfm/data.hpp"
#include "rgvfm/eval.hpp"
#include "rgvfm/sampler.hpp"

namespace rgvfm {

/// Plot-ready delimited tables; no plotting here.
///   samples_unwrapped.txt      phi z            (equal-area chart per sample)
///   checkerboard_overlay.txt   cell bounds + on/off flag
///   norm_histogram.txt         bin_lo bin_hi count
///   trajectory_snapshots.txt   sample_id t x y z at t in {0, .25, .5, .75, 1}
void export_unwrapped_samples(const std::filesystem::path& path, std::span<const Vec> samples);
void export_checkerboard_overlay(const std::filesystem::path& path, const CheckerboardGrid& grid);
void export_trajectory_snapshots(const std::filesystem::path& path,
                                 std::span<const Trajectory> trajectories);

}  // namespace rgvfm
