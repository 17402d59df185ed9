#pragma once

#include <cstdint>
#include <filesystem>

#include "rgvfm/manifold.hpp"
#include "rgvfm/net.hpp"
#include "rgvfm/variant.hpp"

namespace rgvfm {

/// Trained parameters plus the metadata needed to sample from them.
struct Checkpoint {
  Mlp params;
  Variant variant = Variant::RG_VFM_M;
  ManifoldKind manifold = ManifoldKind::sphere(3);
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

/// Plain-text format, one `layer` block per affine layer with hexfloat
/// values, so a save/load round trip is bitwise exact. Layout:
///   rgvfm_checkpoint_v1
///   variant <name>
///   manifold <type> <dim>
///   seed <u64>
///   config_hash <hex u64>
///   layers <count>
///   layer <index> <rows> <cols>
///   w <rows*cols hexfloats, row-major, one row per line>
///   b <rows hexfloats>
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace rgvfm
