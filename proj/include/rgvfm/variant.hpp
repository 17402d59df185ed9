#pragma once

#include <optional>
#include <string_view>

namespace rgvfm {

/// The five trainable objectives. CFM and RFM are vanilla (velocity-matching)
/// models; the others are variational (endpoint-matching). The two RG
/// variants differ only in their prior and conditional path: RG_VFM_R3 pairs
/// an ambient cube prior with linear interpolation, RG_VFM_M stays on the
/// manifold with geodesic interpolation.
enum class Variant { CFM, VFM_GAUSS, RFM, RG_VFM_R3, RG_VFM_M };

inline constexpr Variant kAllVariants[] = {Variant::CFM, Variant::VFM_GAUSS, Variant::RFM,
                                           Variant::RG_VFM_R3, Variant::RG_VFM_M};

inline bool variant_is_variational(Variant v) {
  return v == Variant::VFM_GAUSS || v == Variant::RG_VFM_R3 || v == Variant::RG_VFM_M;
}

inline bool variant_uses_geodesic_path(Variant v) {
  return v == Variant::RFM || v == Variant::RG_VFM_M;
}

/// True when the prior is the uniform distribution on the manifold itself
/// (otherwise it is the ambient cube [-1,1]^d).
inline bool variant_prior_on_manifold(Variant v) { return variant_uses_geodesic_path(v); }

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::CFM: return "cfm";
    case Variant::VFM_GAUSS: return "vfm_gauss";
    case Variant::RFM: return "rfm";
    case Variant::RG_VFM_R3: return "rg_vfm_r3";
    case Variant::RG_VFM_M: return "rg_vfm_m";
  }
  return "unknown";
}

inline std::optional<Variant> variant_from_name(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (name == variant_name(v)) return v;
  }
  return std::nullopt;
}

}  // namespace rgvfm
