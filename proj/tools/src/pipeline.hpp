#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "madkit/features/embeddings.hpp"
#include "madkit/manifest.hpp"
#include "madkit/metrics/vulnerability.hpp"
#include "madkit/protocol/comparisons.hpp"

namespace madkit::cli {

/// Reads a manifest and throws ErrorCode::Validation listing its violations.
DatasetManifest load_valid_manifest(const std::filesystem::path& path);

/// Differential MAD trials: every genuine comparison is a bona fide sample,
/// every attack comparison an attack sample. Feature = ref - probe.
struct TrialFeatures {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<protocol::Comparison> trials;
};

TrialFeatures difference_features(const DatasetManifest& manifest, const features::EmbeddingStore& store,
                                  protocol::AttackConvention convention);

struct SimilarityScores {
  std::vector<double> genuine;
  std::vector<double> impostor;
  std::vector<metrics::MorphScores> morphs;
  std::vector<std::pair<protocol::Comparison, double>> all;  ///< CSV order
};

/// Cosine similarities of every comparison, attacks grouped per morph and
/// contributor (both sorted by id).
SimilarityScores similarity_scores(const DatasetManifest& manifest, const features::EmbeddingStore& store,
                                   protocol::AttackConvention convention);

std::vector<std::string> subject_ids(const DatasetManifest& manifest);

/// Sorted intersection of two sorted id lists.
std::vector<std::string> shared_ids(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace madkit::cli
