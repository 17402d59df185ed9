#pragma once

#include <iosfwd>
#include <vector>

#include "rgvfm/config.hpp"
#include "rgvfm/net.hpp"

namespace rgvfm {

struct TrainResult {
  Mlp params;
  std::vector<double> epoch_losses;
  std::vector<long> epoch_clamped;  // antipodal clamp events per epoch
};

/// Runs the full epoch loop: every epoch draws a fresh training set from the
/// checkerboard target, pairs each point with a fresh prior draw and time,
/// and applies one optimizer step per minibatch. Deterministic for a fixed
/// config and seed. `progress`, when given, receives one line every few
/// percent of epochs.
TrainResult train_model(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace rgvfm
