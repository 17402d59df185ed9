#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rgvfm/data.hpp"
#include "rgvfm/manifold.hpp"
#include "rgvfm/sampler.hpp"
#include "rgvfm/variant.hpp"

namespace rgvfm {

enum class Retract { Auto, On, Off };

/// Everything a run needs, flat and serializable. The file format is plain
/// `key = value` lines with '#' comments; unknown or duplicate keys are
/// rejected so every written config re-parses to the same run.
struct RunConfig {
  Variant variant = Variant::RG_VFM_M;
  ManifoldKind manifold = ManifoldKind::sphere(3);
  CheckerboardGrid grid;
  int hidden_dim = 128;
  int epochs = 3000;
  int batch_size = 512;
  int train_samples_per_epoch = 10000;
  double learning_rate = 1e-3;
  double sigma = 1.0;
  IntegratorConfig integrator;
  Retract retract = Retract::Auto;
  int n_samples = 5000;
  std::uint64_t seed = 0;
  std::string output_dir = "runs/out";
};

/// Integrator settings with Retract::Auto resolved for the variant
/// (retraction on for the on-manifold variants).
IntegratorConfig resolved_integrator(const RunConfig& cfg);

void validate_config(const RunConfig& cfg);

RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// Canonical serialization (fixed key order, round-trippable values).
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a over the canonical serialization minus output_dir, so moving a run
/// directory does not orphan its checkpoints.
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace rgvfm
