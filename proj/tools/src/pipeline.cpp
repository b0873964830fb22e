#include "pipeline.hpp"

#include <algorithm>
#include <iterator>

#include "madkit/classify/svm.hpp"
#include "madkit/error.hpp"
#include "madkit/features/difference.hpp"

namespace madkit::cli {

DatasetManifest load_valid_manifest(const std::filesystem::path& path) {
  DatasetManifest m = read_manifest(path);
  const auto violations = validate_manifest(m);
  if (!violations.empty()) {
    std::string msg = "manifest " + path.string() + " has " + std::to_string(violations.size()) + " violation(s):";
    for (std::size_t i = 0; i < violations.size() && i < 20; ++i) {
      const auto& v = violations[i];
      msg += "\n  " + v.rule + ": " + v.id + (v.detail.empty() ? "" : " (" + v.detail + ")");
    }
    throw Error(ErrorCode::Validation, msg);
  }
  return m;
}

TrialFeatures difference_features(const DatasetManifest& manifest, const features::EmbeddingStore& store,
                                  protocol::AttackConvention convention) {
  const auto set = protocol::enumerate_comparisons(manifest, convention);
  TrialFeatures out;
  auto add = [&](const protocol::Comparison& c, int label) {
    const auto& ref = store.at(c.reference_id);
    const auto& probe = store.at(c.probe_id);
    out.rows.push_back(features::combine_difference(ref.values(), probe.values()));
    out.labels.push_back(label);
    out.trials.push_back(c);
  };
  for (const auto& c : set.genuine) add(c, classify::kBonaFide);
  for (const auto& c : set.attacks) add(c, classify::kAttack);
  return out;
}

SimilarityScores similarity_scores(const DatasetManifest& manifest, const features::EmbeddingStore& store,
                                   protocol::AttackConvention convention) {
  const auto set = protocol::enumerate_comparisons(manifest, convention);
  SimilarityScores out;
  auto sim = [&](const protocol::Comparison& c) {
    return cosine_similarity(store.at(c.reference_id), store.at(c.probe_id));
  };
  for (const auto& c : set.sorted()) out.all.emplace_back(c, sim(c));
  for (const auto& c : set.genuine) out.genuine.push_back(sim(c));
  for (const auto& c : set.impostor) out.impostor.push_back(sim(c));
  std::map<std::string, std::map<std::string, std::vector<double>>> grouped;
  for (const auto& c : set.attacks) grouped[c.reference_id][c.subject_id].push_back(sim(c));
  for (auto& [morph, by_subject] : grouped) {
    metrics::MorphScores ms;
    ms.morph_id = morph;
    for (auto& [subject, scores] : by_subject) ms.contributors.push_back(std::move(scores));
    out.morphs.push_back(std::move(ms));
  }
  return out;
}

std::vector<std::string> subject_ids(const DatasetManifest& manifest) {
  std::vector<std::string> ids;
  for (const auto& s : manifest.subjects) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> shared_ids(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace madkit::cli
