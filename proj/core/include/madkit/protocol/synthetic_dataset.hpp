#pragma once

#include <cstdint>
#include <string>

#include "madkit/manifest.hpp"

namespace madkit::protocol {

/// Shape of a generated manifest. Per subject: `references` bona fide
/// reference images, `morph_inputs` morph-input images and `probes` probes,
/// each probe in a different session than the reference images.
struct SyntheticDatasetConfig {
  std::string manifest_id = "synthetic";
  std::string subject_prefix = "s";
  int subjects = 100;
  int references = 1;
  int morph_inputs = 1;
  int probes = 2;
  double female_fraction = 0.4;
  double glasses_probability = 0.15;
  double alpha = 0.5;
  std::string tool = "opencv";
  std::uint64_t seed = 1;
};

/// Generates subjects and pairs their morph inputs with pair_for_morphing.
DatasetManifest synthetic_manifest(const SyntheticDatasetConfig& config);

}  // namespace madkit::protocol
