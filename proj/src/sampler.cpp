#include "rgvfm/sampler.hpp"

#include <cmath>
#include <string>

namespace rgvfm {

namespace {

constexpr double kVelocityTimeTol = 1e-6;

Vec project_vec(const ManifoldKind& kind, const Vec& v) { return project(kind, v).coords; }

}  // namespace

void validate_integrator(const IntegratorConfig& cfg) {
  if (cfg.steps < 1) throw Error(ErrorCode::InvalidConfig, "integrator steps must be >= 1");
  if (!(cfg.t_end > 0.0) || cfg.t_end > 1.0) {
    throw Error(ErrorCode::InvalidConfig, "integrator t_end must lie in (0, 1]");
  }
}

Vec velocity(Variant variant, const Mlp& net, const ManifoldKind& kind, const Vec& x, double t) {
  if (1.0 - t < kVelocityTimeTol) {
    throw Error(ErrorCode::TimeSingularity, "velocity undefined this close to t = 1");
  }
  Vec y = mlp_forward(net, x, t);
  switch (variant) {
    case Variant::CFM:
      return y;
    case Variant::RFM: {
      if (kind.type != ManifoldType::Sphere) return y;
      Vec base = project_vec(kind, x);
      return y - y.dot(base) * base;
    }
    case Variant::VFM_GAUSS:
      return (y - x) / (1.0 - t);
    case Variant::RG_VFM_R3: {
      Vec mu = (kind.type == ManifoldType::Sphere) ? project_vec(kind, y) : y;
      return (mu - x) / (1.0 - t);
    }
    case Variant::RG_VFM_M: {
      Point base = project(kind, x);
      Point mu = project(kind, y);
      Tangent lg = log_map(kind, base, mu);
      return lg.vec / (1.0 - t);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

IntegrateResult integrate(Variant variant, const Mlp& net, const ManifoldKind& kind,
                          const Vec& x0, const IntegratorConfig& cfg) {
  validate_integrator(cfg);
  const double h = cfg.t_end / cfg.steps;
  Vec x = x0;

  IntegrateResult result;
  if (cfg.record_trajectory) {
    result.trajectory.times = Vec::Zero(cfg.steps + 1);
    result.trajectory.points = Mat::Zero(x0.size(), cfg.steps + 1);
    result.trajectory.points.col(0) = x;
  }

  for (int k = 0; k < cfg.steps; ++k) {
    const double t = k * h;
    Vec k1 = velocity(variant, net, kind, x, t);
    Vec k2 = velocity(variant, net, kind, x + 0.5 * h * k1, t + 0.5 * h);
    Vec k3 = velocity(variant, net, kind, x + 0.5 * h * k2, t + 0.5 * h);
    Vec k4 = velocity(variant, net, kind, x + h * k3, t + h);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (cfg.retract_each_step) x = project_vec(kind, x);
    if (!x.allFinite()) {
      throw Error(ErrorCode::NonFiniteState,
                  "state became non-finite at step " + std::to_string(k));
    }
    if (cfg.record_trajectory) {
      result.trajectory.times[k + 1] = (k + 1) * h;
      result.trajectory.points.col(k + 1) = x;
    }
  }
  result.x_final = std::move(x);
  return result;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over a per-index offset of the run seed
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GenerateResult generate(Variant variant, const Mlp& net, const ManifoldKind& kind, int n,
                        std::uint64_t seed, const IntegratorConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::EmptyInput, "sample count must be >= 1");
  validate_integrator(cfg);

  GenerateResult out;
  out.samples.reserve(static_cast<std::size_t>(n));
  const bool variational = variant_is_variational(variant);

  for (int i = 0; i < n; ++i) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
    Vec x0 = sample_prior(variant, rng, 1).front();
    try {
      IntegrateResult r = integrate(variant, net, kind, x0, cfg);
      if (variational) {
        // residual between where the flow stopped and where the model says
        // the endpoint is; not snapped, only reported
        Vec mu = mlp_forward(net, r.x_final, cfg.t_end);
        if (kind.type == ManifoldType::Sphere) {
          double d = geodesic_distance(kind, project(kind, r.x_final), project(kind, mu));
          out.endpoint_residuals.push_back(d);
        } else {
          out.endpoint_residuals.push_back((mu - r.x_final).norm());
        }
      }
      out.samples.push_back(std::move(r.x_final));
      if (cfg.record_trajectory) out.trajectories.push_back(std::move(r.trajectory));
    } catch (const Error&) {
      out.failures += 1;
    }
  }

  if (out.failures * 100 > n) {
    throw Error(ErrorCode::NonFiniteState,
                std::to_string(out.failures) + " of " + std::to_string(n) + " samples aborted");
  }
  return out;
}

}  // namespace rgvfm
