#include "madkit/protocol/synthetic_dataset.hpp"

#include <algorithm>

#include "madkit/error.hpp"
#include "madkit/protocol/pairing.hpp"
#include "madkit/rng.hpp"

namespace madkit::protocol {

namespace {
std::string padded(int value, int width) {
  std::string s = std::to_string(value);
  return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
}
}  // namespace

DatasetManifest synthetic_manifest(const SyntheticDatasetConfig& config) {
  if (config.subjects < 0 || config.references < 0 || config.morph_inputs < 0 || config.probes < 0) {
    throw Error(ErrorCode::InvalidArgument, "synthetic dataset counts must be non-negative");
  }
  if (!(config.female_fraction >= 0.0 && config.female_fraction <= 1.0) ||
      !(config.glasses_probability >= 0.0 && config.glasses_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "synthetic dataset probabilities must lie in [0, 1]");
  }
  const int width = std::max<int>(4, static_cast<int>(std::to_string(config.subjects).size()));
  DatasetManifest manifest;
  manifest.id = config.manifest_id;
  Rng rng(derive_seed(config.seed, "synthetic-manifest"));
  for (int s = 0; s < config.subjects; ++s) {
    SubjectRecord subject;
    subject.id = config.subject_prefix + padded(s, width);
    subject.sex = rng.bernoulli(config.female_fraction) ? Sex::Female : Sex::Male;
    auto add = [&](const char* tag, int count, ImageRole role, const char* session) {
      for (int k = 0; k < count; ++k) {
        ImageRecord img;
        img.id = subject.id + "_" + tag + std::to_string(k);
        img.role = role;
        img.session = session;
        img.glasses = rng.bernoulli(config.glasses_probability);
        subject.images.push_back(std::move(img));
      }
    };
    add("ref", config.references, ImageRole::BonaFideReference, "s1");
    add("mi", config.morph_inputs, ImageRole::MorphInput, "s1");
    add("probe", config.probes, ImageRole::Probe, "s2");
    manifest.subjects.push_back(std::move(subject));
  }
  PairingOptions options;
  options.tool = config.tool;
  options.alpha = config.alpha;
  return apply_pairing(manifest, options);
}

}  // namespace madkit::protocol
