#include "rgvfm/train.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "rgvfm/data.hpp"
#include "rgvfm/objectives.hpp"

namespace rgvfm {

TrainResult train_model(const RunConfig& cfg, std::ostream* progress) {
  validate_config(cfg);
  if (!(cfg.manifold.type == ManifoldType::Sphere && cfg.manifold.dim == 3)) {
    throw Error(ErrorCode::InvalidConfig,
                "training targets the spherical checkerboard; manifold must be sphere with dim 3");
  }

  const int ambient = cfg.manifold.dim;
  Rng rng(cfg.seed);
  TrainResult result;
  result.params = mlp_init(cfg.seed, ambient + 1, cfg.hidden_dim, ambient);
  AdamState adam = make_adam(result.params, cfg.learning_rate);
  MlpGrads grads = make_grads(result.params);

  const auto draw_prior = [&](Rng& r) { return sample_prior(cfg.variant, r, 1).front(); };

  std::vector<PathSample> batch;
  batch.reserve(static_cast<std::size_t>(cfg.batch_size));

  const int report_every = std::max(1, cfg.epochs / 20);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<Point> targets = sample_checkerboard(cfg.grid, rng, cfg.train_samples_per_epoch);

    double epoch_loss = 0.0;
    LossStats stats;
    std::size_t consumed = 0;
    while (consumed < targets.size()) {
      const std::size_t take =
          std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), targets.size() - consumed);
      batch.clear();
      for (std::size_t i = 0; i < take; ++i) {
        batch.push_back(sample_path_resampling(cfg.variant, cfg.manifold, rng, draw_prior,
                                               targets[consumed + i].coords));
      }
      consumed += take;
      double batch_loss;
      try {
        batch_loss = loss_and_grad(result.params, cfg.manifold, cfg.variant, batch, grads, &stats);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NonFiniteLoss) {
          throw Error(ErrorCode::NonFiniteLoss,
                      "training diverged at epoch " + std::to_string(epoch));
        }
        throw;
      }
      optimizer_step(result.params, grads, adam);
      epoch_loss += batch_loss * static_cast<double>(take);
    }
    epoch_loss /= static_cast<double>(targets.size());
    result.epoch_losses.push_back(epoch_loss);
    result.epoch_clamped.push_back(stats.antipodal_clamped);

    if (progress != nullptr && (epoch % report_every == 0 || epoch + 1 == cfg.epochs)) {
      *progress << "epoch " << epoch << "/" << cfg.epochs << " loss " << epoch_loss;
      if (stats.antipodal_clamped > 0) *progress << " clamped " << stats.antipodal_clamped;
      *progress << "\n";
      progress->flush();
    }
  }
  return result;
}

}  // namespace rgvfm
