#include "madkit/protocol/pairing.hpp"

#include <algorithm>

#include "madkit/error.hpp"

namespace madkit::protocol {

PairingResult pair_for_morphing(std::vector<MorphInput> inputs) {
  std::sort(inputs.begin(), inputs.end(),
            [](const MorphInput& a, const MorphInput& b) { return a.image_id < b.image_id; });
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    if (inputs[i].image_id == inputs[i - 1].image_id) {
      throw Error(ErrorCode::InvalidArgument, "duplicate morph input id " + inputs[i].image_id);
    }
  }
  PairingResult result;
  std::vector<bool> used(inputs.size(), false);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (used[i]) continue;
    const MorphInput& a = inputs[i];
    for (std::size_t j = i + 1; j < inputs.size(); ++j) {
      const MorphInput& b = inputs[j];
      if (used[j] || b.subject_id == a.subject_id || b.sex != a.sex || (a.glasses && b.glasses)) {
        continue;
      }
      used[i] = used[j] = true;
      result.pairs.emplace_back(a.image_id, b.image_id);
      break;
    }
    if (!used[i]) result.unpaired.push_back(a.image_id);
  }
  return result;
}

std::vector<MorphInput> morph_inputs(const DatasetManifest& manifest) {
  std::vector<MorphInput> out;
  for (const auto& subject : manifest.subjects) {
    for (const auto& img : subject.images) {
      if (img.role == ImageRole::MorphInput) {
        out.push_back({img.id, subject.id, subject.sex, img.glasses});
      }
    }
  }
  return out;
}

DatasetManifest apply_pairing(const DatasetManifest& manifest, const PairingOptions& options,
                              PairingResult* report) {
  PairingResult pairing = pair_for_morphing(morph_inputs(manifest));
  DatasetManifest out = manifest;
  out.morph_pairs.clear();
  for (const auto& [a, b] : pairing.pairs) {
    MorphPair pair;
    pair.id = options.id_prefix + a + "_" + b;
    pair.image_a = a;
    pair.image_b = b;
    pair.tool = options.tool;
    pair.alpha = options.alpha;
    out.morph_pairs.push_back(std::move(pair));
  }
  if (report) *report = std::move(pairing);
  return out;
}

}  // namespace madkit::protocol
