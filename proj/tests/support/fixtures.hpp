#pragma once

#include <string>
#include <vector>

#include "madkit/manifest.hpp"

namespace madkit_test {

inline madkit::ImageRecord image(std::string id, madkit::ImageRole role, bool glasses = false,
                                 std::string session = "s1") {
  madkit::ImageRecord r;
  r.id = std::move(id);
  r.role = role;
  r.glasses = glasses;
  r.session = std::move(session);
  return r;
}

inline madkit::SubjectRecord subject(std::string id, madkit::Sex sex, std::vector<madkit::ImageRecord> images) {
  return {std::move(id), sex, std::move(images)};
}

/// Two male subjects with one reference, one morph input and one probe each,
/// plus the single valid morph of their inputs.
inline madkit::DatasetManifest two_subject_manifest() {
  using madkit::ImageRole;
  madkit::DatasetManifest m;
  m.id = "tiny";
  m.subjects.push_back(subject("A", madkit::Sex::Male,
                               {image("A_ref", ImageRole::BonaFideReference), image("A_mi", ImageRole::MorphInput),
                                image("A_probe", ImageRole::Probe, false, "s2")}));
  m.subjects.push_back(subject("B", madkit::Sex::Male,
                               {image("B_ref", ImageRole::BonaFideReference), image("B_mi", ImageRole::MorphInput),
                                image("B_probe", ImageRole::Probe, false, "s2")}));
  madkit::MorphPair p;
  p.id = "M_AB";
  p.image_a = "A_mi";
  p.image_b = "B_mi";
  m.morph_pairs.push_back(p);
  return m;
}

}  // namespace madkit_test
