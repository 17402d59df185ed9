#include "rgvfm/objectives.hpp"

#include <cmath>

namespace rgvfm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAntipodalTol = 1e-9;

void check_time(double t) {
  if (1.0 - t < kTimeEps) {
    throw Error(ErrorCode::TimeSingularity, "sample time too close to 1");
  }
}

// Squared-error head against the sample's stored target (CFM and plain VFM).
double mse_head(const Vec& y, const Vec& target, Vec& dy) {
  Vec r = y - target;
  dy = 2.0 * r;
  return r.squaredNorm();
}

// RFM: project the raw output onto T_{x_t}(M), then squared error against the
// conditional velocity. The projection is idempotent and symmetric, so the
// pullback is one more projection of the residual gradient.
double rfm_head(const ManifoldKind& kind, const PathSample& s, const Vec& y, Vec& dy) {
  check_time(s.t);
  if (kind.type == ManifoldType::Sphere) {
    const Vec& x = s.xt;
    Vec py = y - y.dot(x) * x;
    Vec r = py - s.target;
    dy = 2.0 * (r - r.dot(x) * x);
    return r.squaredNorm();
  }
  return mse_head(y, s.target, dy);
}

// RG-VFM: squared geodesic distance between the projected prediction and the
// endpoint, differentiated through the projection and the log-map norm.
double rgvfm_head(const ManifoldKind& kind, const PathSample& s, const Vec& y, Vec& dy,
                  LossStats* stats) {
  switch (kind.type) {
    case ManifoldType::Euclidean:
      // projection disabled: the loss collapses to the plain VFM objective
      return mse_head(y, s.x1, dy);
    case ManifoldType::Sphere: {
      double n = y.norm();
      if (n <= 1e-12) {
        throw Error(ErrorCode::ZeroVector, "prediction has no direction to project");
      }
      Vec mu = y / n;
      double dot = std::clamp(s.x1.dot(mu), -1.0, 1.0);
      if (1.0 + dot <= kAntipodalTol) {
        if (stats != nullptr) stats->antipodal_clamped += 1;
        dy.setZero();
        return kPi * kPi;
      }
      double theta = std::acos(dot);
      Vec dmu = (-2.0 * theta_over_sin(theta)) * s.x1;
      dy = normalize_vjp(y, mu, dmu);
      return theta * theta;
    }
    case ManifoldType::FlatTorus: {
      // wrap has unit derivative a.e., so the chain rule is the flat one
      double acc = 0.0;
      dy.resize(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        double d = wrap_angle(y[i] - s.x1[i]);
        acc += d * d;
        dy[i] = 2.0 * d;
      }
      return acc;
    }
  }
  throw Error(ErrorCode::UnsupportedManifold, "unknown manifold type");
}

}  // namespace

PathSample sample_path(Variant variant, const ManifoldKind& kind, Rng& rng, const Vec& x0,
                       const Vec& x1) {
  if (x0.size() != x1.size()) {
    throw Error(ErrorCode::DimensionMismatch, "x0 and x1 must have equal dimension");
  }
  std::uniform_real_distribution<double> uni(0.0, 1.0 - kTimeEps);
  PathSample s;
  s.t = uni(rng);
  s.x0 = x0;
  s.x1 = x1;
  if (variant_uses_geodesic_path(variant)) {
    Point p0{x0}, p1{x1};
    Tangent lg = log_map(kind, p0, p1);
    Tangent step{p0, s.t * lg.vec};
    s.xt = exp_map(kind, p0, step).coords;
    if (variant == Variant::RFM) {
      Tangent to_end = log_map(kind, Point{s.xt}, p1);
      s.target = to_end.vec / (1.0 - s.t);
    } else {
      s.target = x1;
    }
  } else {
    s.xt = (1.0 - s.t) * x0 + s.t * x1;
    s.target = (variant == Variant::CFM) ? Vec(x1 - x0) : x1;
  }
  return s;
}

PathSample sample_path_resampling(Variant variant, const ManifoldKind& kind, Rng& rng,
                                  const std::function<Vec(Rng&)>& draw_x0, const Vec& x1,
                                  int max_retries) {
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Vec x0 = draw_x0(rng);
    try {
      return sample_path(variant, kind, rng, x0, x1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AntipodalPoints) throw;
    }
  }
  throw Error(ErrorCode::AntipodalPoints, "prior resampling exhausted its retry budget");
}

Mat batch_inputs(std::span<const PathSample> batch) {
  if (batch.empty()) throw Error(ErrorCode::EmptyInput, "empty batch");
  const Eigen::Index d = batch.front().xt.size();
  Mat in(d + 1, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    in.col(static_cast<Eigen::Index>(i)).head(d) = batch[i].xt;
    in(d, static_cast<Eigen::Index>(i)) = batch[i].t;
  }
  return in;
}

LossHead make_loss_head(Variant variant, const ManifoldKind& kind,
                        std::span<const PathSample> batch, LossStats* stats) {
  switch (variant) {
    case Variant::CFM:
    case Variant::VFM_GAUSS:
      return [batch](Eigen::Index c, const Vec& y, Vec& dy) {
        return mse_head(y, batch[static_cast<std::size_t>(c)].target, dy);
      };
    case Variant::RFM:
      return [kind, batch](Eigen::Index c, const Vec& y, Vec& dy) {
        return rfm_head(kind, batch[static_cast<std::size_t>(c)], y, dy);
      };
    case Variant::RG_VFM_R3:
    case Variant::RG_VFM_M:
      return [kind, batch, stats](Eigen::Index c, const Vec& y, Vec& dy) {
        return rgvfm_head(kind, batch[static_cast<std::size_t>(c)], y, dy, stats);
      };
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

double loss(const Mlp& net, const ManifoldKind& kind, Variant variant,
            std::span<const PathSample> batch, LossStats* stats) {
  LossHead head = make_loss_head(variant, kind, batch, stats);
  Mat y = mlp_forward_batch(net, batch_inputs(batch));
  double total = 0.0;
  Vec yi(y.rows()), dyi(y.rows());
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    yi = y.col(c);
    total += head(c, yi, dyi);
  }
  if (!std::isfinite(total)) {
    throw Error(ErrorCode::NonFiniteLoss, "loss reduction is not finite");
  }
  return total / static_cast<double>(y.cols());
}

double loss_and_grad(const Mlp& net, const ManifoldKind& kind, Variant variant,
                     std::span<const PathSample> batch, MlpGrads& grads, LossStats* stats) {
  LossHead head = make_loss_head(variant, kind, batch, stats);
  return rgvfm::loss_and_grad(net, batch_inputs(batch), head, grads);
}

}  // namespace rgvfm
