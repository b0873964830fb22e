#pragma once

#include <string>
#include <vector>

#include "madkit/manifest.hpp"

namespace madkit::protocol {

struct MorphInput {
  std::string image_id;
  std::string subject_id;
  Sex sex = Sex::Male;
  bool glasses = false;
};

struct PairingResult {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> unpaired;
};

/// Sorts inputs by image id and scans forward: each unused image is paired
/// with the nearest following unused image of a different subject with the
/// same sex where not both wear glasses. Each image is used at most once.
/// Throws ErrorCode::InvalidArgument on duplicate image ids.
PairingResult pair_for_morphing(std::vector<MorphInput> inputs);

/// Morph inputs declared in a manifest, in manifest order.
std::vector<MorphInput> morph_inputs(const DatasetManifest& manifest);

struct PairingOptions {
  std::string tool = "opencv";
  double alpha = 0.5;
  std::string id_prefix = "morph_";
};

/// Returns a copy of `manifest` whose morph pairs are replaced by the output
/// of pair_for_morphing over its morph-input images. The first image of each
/// pair is the attacker.
DatasetManifest apply_pairing(const DatasetManifest& manifest, const PairingOptions& options,
                              PairingResult* report = nullptr);

}  // namespace madkit::protocol
