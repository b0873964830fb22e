#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace madkit {

enum class ScoreOrientation {
  HigherIsAttack,  ///< MAD scores: bona fide (negative) vs attack (positive)
  HigherIsMatch,   ///< comparison scores: impostor (negative) vs genuine (positive)
};

enum class ScoreLabel { BonaFide, Attack, Genuine, Impostor };

struct LabeledScore {
  double score = 0.0;
  ScoreLabel label = ScoreLabel::BonaFide;
};

/// Two-class score collection. `negative` holds bona fide (or impostor)
/// scores; `positive` holds attack (or genuine) scores.
struct ScoreSet {
  ScoreOrientation orientation = ScoreOrientation::HigherIsAttack;
  std::vector<double> negative;
  std::vector<double> positive;

  static ScoreSet from_labeled(const std::vector<LabeledScore>& scores);

  const std::vector<double>& bona_fide() const noexcept { return negative; }
  const std::vector<double>& attack() const noexcept { return positive; }
  const std::vector<double>& impostor() const noexcept { return negative; }
  const std::vector<double>& genuine() const noexcept { return positive; }

  /// Throws ErrorCode::Numeric on non-finite entries and
  /// ErrorCode::EmptyClass when either class is empty.
  void validate() const;
};

std::string to_string(ScoreLabel label);
ScoreLabel parse_score_label(const std::string& text);

/// CSV with a `score,label` header; lines starting with '#' are comments.
/// Extra trailing columns are ignored so richer score files can be read.
std::vector<LabeledScore> read_score_csv(const std::filesystem::path& path);

}  // namespace madkit
