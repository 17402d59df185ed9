#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rgvfm/manifold.hpp"
#include "rgvfm/net.hpp"
#include "rgvfm/variant.hpp"

namespace rgvfm {

/// Sampled times are capped at 1 - kTimeEps so the 1/(1-t) factors in the
/// velocity targets stay bounded.
inline constexpr double kTimeEps = 1e-3;

/// One training tuple. `target` is the conditional velocity for the vanilla
/// variants (CFM, RFM) and the endpoint x1 for the variational ones.
struct PathSample {
  double t = 0.0;
  Vec x0;
  Vec x1;
  Vec xt;
  Vec target;
};

/// Draws t ~ U[0, 1 - kTimeEps] and builds the conditional path point and
/// target for the variant: linear interpolation with constant velocity
/// x1 - x0 for the ambient variants, geodesic interpolation with target
/// log_{x_t}(x1)/(1-t) for RFM. Geodesic variants throw AntipodalPoints when
/// x0 is (numerically) antipodal to x1.
PathSample sample_path(Variant variant, const ManifoldKind& kind, Rng& rng, const Vec& x0,
                       const Vec& x1);

/// sample_path with the prior redrawn on AntipodalPoints, up to `max_retries`
/// times (the antipodal event has probability ~1e-10 per draw but a long
/// training run does hit it).
PathSample sample_path_resampling(Variant variant, const ManifoldKind& kind, Rng& rng,
                                  const std::function<Vec(Rng&)>& draw_x0, const Vec& x1,
                                  int max_retries = 100);

/// Counters accumulated over a loss evaluation.
struct LossStats {
  long antipodal_clamped = 0;
};

/// Column-stacked network inputs [x_t; t] for a batch.
Mat batch_inputs(std::span<const PathSample> batch);

/// Per-sample differentiable loss head for the variant (see net.hpp). The
/// head owns the variant-specific post-processing: tangent projection for
/// RFM, sphere projection + log-map norm for the RG variants. Sphere
/// predictions antipodal to their target get the sample loss clamped at pi^2
/// with a zero gradient, counted in `stats`.
LossHead make_loss_head(Variant variant, const ManifoldKind& kind,
                        std::span<const PathSample> batch, LossStats* stats = nullptr);

/// Mean variant loss over the batch (no gradients).
double loss(const Mlp& net, const ManifoldKind& kind, Variant variant,
            std::span<const PathSample> batch, LossStats* stats = nullptr);

/// Mean variant loss plus parameter gradients (overwritten).
double loss_and_grad(const Mlp& net, const ManifoldKind& kind, Variant variant,
                     std::span<const PathSample> batch, MlpGrads& grads,
                     LossStats* stats = nullptr);

}  // namespace rgvfm
