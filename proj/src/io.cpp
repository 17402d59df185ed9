#include "rgvfm/io.hpp"

#include <fstream>
#include <sstream>

namespace rgvfm {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_samples(const std::filesystem::path& path, std::span<const Vec> samples) {
  auto out = open_out(path);
  out << "x y z\n";
  for (const Vec& s : samples) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (i > 0) out << ' ';
      out << format_double(s[i]);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<Vec> read_samples(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptySamples, "no header in " + path.string());
  std::vector<Vec> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    double v;
    while (ls >> v) vals.push_back(v);
    if (vals.empty()) continue;
    Vec x(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) x[static_cast<Eigen::Index>(i)] = vals[i];
    out.push_back(std::move(x));
  }
  if (out.empty()) throw Error(ErrorCode::EmptySamples, "no samples in " + path.string());
  return out;
}

void write_residuals(const std::filesystem::path& path, std::span<const double> residuals) {
  auto out = open_out(path);
  out << "endpoint_residual\n";
  for (double r : residuals) out << format_double(r) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<double> read_residuals(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(std::stod(line));
  }
  return out;
}

void write_trajectories(const std::filesystem::path& path, std::span<const Trajectory> trajs) {
  auto out = open_out(path);
  out << "sample_id step t x y z\n";
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const Trajectory& tr = trajs[i];
    for (Eigen::Index k = 0; k < tr.times.size(); ++k) {
      out << i << ' ' << k << ' ' << format_double(tr.times[k]);
      for (Eigen::Index d = 0; d < tr.points.rows(); ++d) {
        out << ' ' << format_double(tr.points(d, k));
      }
      out << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<Trajectory> read_trajectories(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  struct Row {
    std::size_t id;
    long step;
    double t;
    std::vector<double> x;
  };
  std::vector<Row> rows;
  std::size_t max_id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Row r;
    ls >> r.id >> r.step >> r.t;
    double v;
    while (ls >> v) r.x.push_back(v);
    if (!r.x.empty()) {
      max_id = std::max(max_id, r.id);
      rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) return {};
  std::vector<std::vector<Row>> grouped(max_id + 1);
  for (Row& r : rows) grouped[r.id].push_back(std::move(r));
  std::vector<Trajectory> out;
  for (auto& g : grouped) {
    Trajectory tr;
    tr.times = Vec::Zero(static_cast<Eigen::Index>(g.size()));
    tr.points = Mat::Zero(g.empty() ? 0 : static_cast<Eigen::Index>(g.front().x.size()),
                          static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) {
      tr.times[static_cast<Eigen::Index>(k)] = g[k].t;
      for (std::size_t d = 0; d < g[k].x.size(); ++d) {
        tr.points(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k)) = g[k].x[d];
      }
    }
    out.push_back(std::move(tr));
  }
  return out;
}

void write_loss_curve(const std::filesystem::path& path, std::span<const double> losses,
                      std::span<const long> antipodal_clamped) {
  auto out = open_out(path);
  out << "epoch mean_loss antipodal_clamped\n";
  for (std::size_t e = 0; e < losses.size(); ++e) {
    long clamped = e < antipodal_clamped.size() ? antipodal_clamped[e] : 0;
    out << e << ' ' << format_double(losses[e]) << ' ' << clamped << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace rgvfm
