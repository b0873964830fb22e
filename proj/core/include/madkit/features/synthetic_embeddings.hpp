#pragma once

#include <cstddef>
#include <cstdint>

#include "madkit/features/embeddings.hpp"
#include "madkit/manifest.hpp"

namespace madkit::features {

/// Desk-scale stand-in for a face recognition network.
struct SyntheticConfig {
  std::size_t dim = 512;
  /// Per-sample noise added to the identity direction before normalizing.
  double sigma = 0.05;
  /// Overrides every morph pair's alpha when set in (0, 1).
  double morph_alpha = -1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Identity directions are uniform on the unit sphere. A bona fide image of
/// subject S becomes normalize(id_S + sigma*g); a morph of A and B with
/// weight alpha becomes normalize(alpha*id_A + (1-alpha)*id_B + sigma*g).
/// Every vector draws from its own stream keyed by (seed, id), so the result
/// does not depend on manifest order.
EmbeddingStore synthesize_embeddings(const SyntheticConfig& config,
                                     const DatasetManifest& manifest);

/// Unit identity direction used for `subject_id` under `config`.
EmbeddingVector identity_direction(const SyntheticConfig& config, const std::string& subject_id);

}  // namespace madkit::features
