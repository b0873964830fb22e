#include "madkit/features/synthetic_embeddings.hpp"

#include <cmath>

#include "madkit/error.hpp"
#include "madkit/rng.hpp"

namespace madkit::features {

void SyntheticConfig::validate() const {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "synthetic dim must be >= 2");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "synthetic sigma must be non-negative");
  }
  if (morph_alpha >= 0.0 && !(morph_alpha > 0.0 && morph_alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "morph alpha override must lie in (0, 1)");
  }
}

namespace {

std::vector<double> gaussian(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.normal();
  return v;
}

EmbeddingVector noisy(std::vector<double> base, const SyntheticConfig& config, const std::string& id) {
  if (config.sigma > 0.0) {
    Rng rng(derive_seed(config.seed, "sample:" + id));
    for (double& x : base) x += config.sigma * rng.normal();
  }
  return EmbeddingVector(std::move(base)).normalized();
}

}  // namespace

EmbeddingVector identity_direction(const SyntheticConfig& config, const std::string& subject_id) {
  Rng rng(derive_seed(config.seed, "identity:" + subject_id));
  return EmbeddingVector(gaussian(config.dim, rng)).normalized();
}

EmbeddingStore synthesize_embeddings(const SyntheticConfig& config, const DatasetManifest& manifest) {
  config.validate();
  EmbeddingStore store(config.dim, "synthetic");
  std::map<std::string, EmbeddingVector> identities;
  auto identity = [&](const std::string& subject) -> const EmbeddingVector& {
    auto it = identities.find(subject);
    if (it == identities.end()) it = identities.emplace(subject, identity_direction(config, subject)).first;
    return it->second;
  };
  for (const auto& subject : manifest.subjects) {
    const auto values = identity(subject.id).values();
    for (const auto& img : subject.images) {
      store.insert(img.id, noisy({values.begin(), values.end()}, config, img.id));
    }
  }
  for (const auto& pair : manifest.morph_pairs) {
    const SubjectRecord* sa = manifest.owner_of(pair.image_a);
    const SubjectRecord* sb = manifest.owner_of(pair.image_b);
    if (!sa || !sb) throw Error(ErrorCode::Validation, "morph " + pair.id + " has unknown inputs");
    const double alpha = config.morph_alpha > 0.0 ? config.morph_alpha : pair.alpha;
    const auto a = identity(sa->id).values();
    const auto b = identity(sb->id).values();
    std::vector<double> mix(config.dim);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = alpha * a[i] + (1.0 - alpha) * b[i];
    store.insert(pair.id, noisy(std::move(mix), config, pair.id));
  }
  return store;
}

}  // namespace madkit::features
