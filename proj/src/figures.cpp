#include "rgvfm/figures.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include "rgvfm/io.hpp"

namespace rgvfm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}
}  // namespace

void export_unwrapped_samples(const std::filesystem::path& path, std::span<const Vec> samples) {
  auto out = open_out(path);
  out << "phi z\n";
  for (const Vec& s : samples) {
    double norm = s.norm();
    if (norm <= 1e-12) continue;
    auto [phi, z] = unwrap(Point{s / norm});
    out << format_double(phi) << ' ' << format_double(z) << '\n';
  }
}

void export_checkerboard_overlay(const std::filesystem::path& path, const CheckerboardGrid& grid) {
  validate_grid(grid);
  auto out = open_out(path);
  out << "i_azimuth i_z phi_lo phi_hi z_lo z_hi on\n";
  const double dphi = kTwoPi / grid.n_azimuth;
  const double dz = 2.0 / grid.n_z;
  const int want = (grid.parity == Parity::Even) ? 0 : 1;
  for (int iz = 0; iz < grid.n_z; ++iz) {
    for (int ia = 0; ia < grid.n_azimuth; ++ia) {
      out << ia << ' ' << iz << ' ' << format_double(ia * dphi) << ' '
          << format_double((ia + 1) * dphi) << ' ' << format_double(-1.0 + iz * dz) << ' '
          << format_double(-1.0 + (iz + 1) * dz) << ' ' << ((ia + iz) % 2 == want ? 1 : 0)
          << '\n';
    }
  }
}

void export_trajectory_snapshots(const std::filesystem::path& path,
                                 std::span<const Trajectory> trajectories) {
  auto out = open_out(path);
  out << "sample_id t x y z\n";
  constexpr std::array<double, 5> snapshot_times = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t id = 0; id < trajectories.size(); ++id) {
    const Trajectory& tr = trajectories[id];
    if (tr.times.size() == 0) continue;
    for (double want : snapshot_times) {
      // nearest recorded time; t = 1 resolves to the final state at t_end
      Eigen::Index best = 0;
      double best_gap = std::abs(tr.times[0] - want);
      for (Eigen::Index k = 1; k < tr.times.size(); ++k) {
        double gap = std::abs(tr.times[k] - want);
        if (gap < best_gap) {
          best_gap = gap;
          best = k;
        }
      }
      out << id << ' ' << format_double(tr.times[best]);
      for (Eigen::Index d = 0; d < tr.points.rows(); ++d) {
        out << ' ' << format_double(tr.points(d, best));
      }
      out << '\n';
    }
  }
}

}  // namespace rgvfm
