#pragma once

#include <cstdint>
#include <vector>

#include "rgvfm/data.hpp"
#include "rgvfm/manifold.hpp"
#include "rgvfm/net.hpp"
#include "rgvfm/variant.hpp"

namespace rgvfm {

struct IntegratorConfig {
  int steps = 100;
  double t_end = 1.0 - 1e-3;
  bool retract_each_step = false;
  bool record_trajectory = false;
};

void validate_integrator(const IntegratorConfig& cfg);

/// Whether a variant integrates on the manifold (retraction defaults on).
inline bool variant_integrates_on_manifold(Variant v) { return variant_uses_geodesic_path(v); }

/// The variant's generative velocity field at an ambient state x:
///   CFM        raw network output
///   RFM        network output projected onto T_x(M)
///   VFM_GAUSS  (mu(x,t) - x) / (1-t)
///   RG_VFM_R3  (project(mu(x,t)) - x) / (1-t)
///   RG_VFM_M   log_x(project(mu(x,t))) / (1-t)
/// RK4 stages drift off the manifold at O(h^2), so the base point of the
/// tangent projection and log map is the retraction of x, not x itself.
Vec velocity(Variant variant, const Mlp& net, const ManifoldKind& kind, const Vec& x, double t);

struct Trajectory {
  Vec times;   // steps + 1 entries, starting at t = 0
  Mat points;  // dim x (steps + 1)
};

struct IntegrateResult {
  Vec x_final;
  Trajectory trajectory;  // populated only when requested
};

/// Classic fixed-step RK4 on [0, t_end], optionally retracting the state to
/// the manifold after every full step. Aborts with NonFiniteState (and the
/// step index) if the state stops being finite.
IntegrateResult integrate(Variant variant, const Mlp& net, const ManifoldKind& kind,
                          const Vec& x0, const IntegratorConfig& cfg);

struct GenerateResult {
  std::vector<Vec> samples;
  std::vector<Trajectory> trajectories;        // when recording was requested
  std::vector<double> endpoint_residuals;      // variational variants only
  long failures = 0;
};

/// Draws n prior points and integrates each one. Every sample index gets its
/// own RNG substream derived from (seed, index), so results do not depend on
/// how many samples are requested. Fails if more than 1% of samples abort.
GenerateResult generate(Variant variant, const Mlp& net, const ManifoldKind& kind, int n,
                        std::uint64_t seed, const IntegratorConfig& cfg);

/// Substream seed for sample `index` of a run seeded with `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace rgvfm
