#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "madkit/manifest.hpp"

namespace madkit::protocol {

enum class ComparisonKind { Genuine, Impostor, Attack };

/// One trial. For genuine and impostor trials `reference_id` is a bona fide
/// reference image; for attacks it is a morph id. `subject_id` is always the
/// subject of the probe.
struct Comparison {
  ComparisonKind kind = ComparisonKind::Genuine;
  std::string reference_id;
  std::string probe_id;
  std::string subject_id;

  friend bool operator==(const Comparison&, const Comparison&) = default;
  friend auto operator<=>(const Comparison&, const Comparison&) = default;
};

struct ComparisonSet {
  std::vector<Comparison> genuine;
  std::vector<Comparison> impostor;
  std::vector<Comparison> attacks;

  std::size_t size() const noexcept { return genuine.size() + impostor.size() + attacks.size(); }
  /// All trials in CSV order: kind, then ids lexicographically.
  std::vector<Comparison> sorted() const;
};

enum class AttackConvention {
  BothContributors,  ///< probes of both subjects behind the morph (default)
  AttackerOnly,      ///< probes of the attacker only
};

/// Throws ErrorCode::Validation if the manifest has violations.
ComparisonSet enumerate_comparisons(const DatasetManifest& manifest,
                                    AttackConvention convention = AttackConvention::BothContributors);

/// Subjects contributing to a morph: {attacker, accomplice}.
std::pair<std::string, std::string> morph_contributors(const DatasetManifest& manifest,
                                                       const MorphPair& pair);

/// Attack trials grouped per morph and per contributing subject, the shape
/// consumed by the MMPMR computation.
using AttackGroups = std::map<std::string, std::map<std::string, std::vector<std::string>>>;
AttackGroups group_attacks(const std::vector<Comparison>& attacks);

std::string to_string(ComparisonKind kind);
ComparisonKind parse_comparison_kind(const std::string& text);

/// CSV `kind,ref_id,probe_id,subject_id` with a fixed header, rows in
/// ComparisonSet::sorted() order. `comment` lines are written first with '#'.
std::string format_comparisons_csv(const ComparisonSet& set,
                                   const std::vector<std::string>& comments = {});
ComparisonSet parse_comparisons_csv(const std::string& text);

}  // namespace madkit::protocol
