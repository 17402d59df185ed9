#include "rgvfm/eval.hpp"

#include <cmath>
#include <fstream>

#include "rgvfm/io.hpp"

namespace rgvfm {

EvalReport evaluate(std::span<const Vec> samples, const ManifoldKind& kind,
                    const CheckerboardGrid& grid, std::span<const double> residuals) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "no samples to evaluate");
  validate_grid(grid);
  if (kind.type != ManifoldType::Sphere || kind.dim != 3) {
    throw Error(ErrorCode::UnsupportedManifold, "evaluation is defined on S^2");
  }

  EvalReport rep;
  rep.n = static_cast<long>(samples.size());
  rep.norm_histogram.assign(kNormBins, 0);

  double sum = 0.0, sum_sq = 0.0;
  std::vector<long> cell_counts(static_cast<std::size_t>(grid.n_azimuth) * grid.n_z, 0);
  long on_count = 0;
  const double bin_width = (kNormHistHi - kNormHistLo) / kNormBins;

  for (const Vec& s : samples) {
    double norm = s.norm();
    sum += norm;
    sum_sq += norm * norm;
    int bin = static_cast<int>(std::floor((norm - kNormHistLo) / bin_width));
    rep.norm_histogram[static_cast<std::size_t>(std::clamp(bin, 0, kNormBins - 1))] += 1;

    if (norm > 1e-12) {
      Point p{s / norm};
      CellIndex c = cell_index(grid, p);
      cell_counts[static_cast<std::size_t>(c.z) * grid.n_azimuth + c.azimuth] += 1;
      if (is_on_cell(grid, p)) on_count += 1;
    }
  }

  const double n = static_cast<double>(rep.n);
  rep.norm_mean = sum / n;
  rep.norm_std = std::sqrt(std::max(0.0, sum_sq / n - rep.norm_mean * rep.norm_mean));
  rep.on_cell_fraction = static_cast<double>(on_count) / n;

  const int want = (grid.parity == Parity::Even) ? 0 : 1;
  const double uniform_mass = 1.0 / on_cell_count(grid);
  double l1 = 0.0;
  for (int iz = 0; iz < grid.n_z; ++iz) {
    for (int ia = 0; ia < grid.n_azimuth; ++ia) {
      if ((ia + iz) % 2 != want) continue;
      double mass = cell_counts[static_cast<std::size_t>(iz) * grid.n_azimuth + ia] / n;
      l1 += std::abs(mass - uniform_mass);
    }
  }
  rep.occupancy_l1 = l1;

  if (!residuals.empty()) {
    double acc = 0.0;
    for (double r : residuals) acc += r;
    rep.endpoint_residual_mean = acc / static_cast<double>(residuals.size());
  }
  return rep;
}

void write_report(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "key value\n";
  out << "n " << report.n << "\n";
  out << "norm_mean " << format_double(report.norm_mean) << "\n";
  out << "norm_std " << format_double(report.norm_std) << "\n";
  out << "on_cell_fraction " << format_double(report.on_cell_fraction) << "\n";
  out << "occupancy_l1 " << format_double(report.occupancy_l1) << "\n";
  if (report.endpoint_residual_mean) {
    out << "endpoint_residual_mean " << format_double(*report.endpoint_residual_mean) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_norm_histogram(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "bin_lo bin_hi count\n";
  const double bin_width = (kNormHistHi - kNormHistLo) / kNormBins;
  for (int b = 0; b < kNormBins; ++b) {
    out << format_double(kNormHistLo + b * bin_width) << ' '
        << format_double(kNormHistLo + (b + 1) * bin_width) << ' ' << report.norm_histogram[b]
        << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace rgvfm
