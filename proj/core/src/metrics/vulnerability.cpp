#include "madkit/metrics/vulnerability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "madkit/error.hpp"

namespace madkit::metrics {

namespace {
void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::Numeric, std::string(what) + " score is not finite");
  }
}
}  // namespace

double threshold_at_fmr(std::span<const double> impostor, double target) {
  if (impostor.empty()) throw Error(ErrorCode::EmptyClass, "no impostor scores");
  if (!(target >= 0.0)) throw Error(ErrorCode::InvalidArgument, "FMR target must be non-negative");
  check_finite(impostor, "impostor");
  std::vector<double> d(impostor.begin(), impostor.end());
  std::sort(d.begin(), d.end(), std::greater<>());
  const double n = static_cast<double>(d.size());
  std::size_t k = 0;
  while (k < d.size() && static_cast<double>(k + 1) / n <= target) ++k;
  if (k >= d.size()) return -std::numeric_limits<double>::infinity();
  return std::nextafter(d[k], std::numeric_limits<double>::infinity());
}

RecognitionRates recognition_rates(std::span<const double> genuine, std::span<const double> impostor,
                                   double threshold) {
  if (genuine.empty() || impostor.empty()) throw Error(ErrorCode::EmptyClass, "empty score class");
  const auto fm = std::count_if(impostor.begin(), impostor.end(), [&](double s) { return s >= threshold; });
  const auto fnm = std::count_if(genuine.begin(), genuine.end(), [&](double s) { return s < threshold; });
  return {static_cast<double>(fm) / static_cast<double>(impostor.size()),
          static_cast<double>(fnm) / static_cast<double>(genuine.size())};
}

MmpmrResult mmpmr(const std::vector<MorphScores>& morphs, double threshold) {
  if (morphs.empty()) throw Error(ErrorCode::EmptyClass, "no morph scores");
  MmpmrResult r;
  for (const MorphScores& m : morphs) {
    if (m.contributors.empty()) throw Error(ErrorCode::EmptyClass, "morph " + m.morph_id + " has no contributors");
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& scores : m.contributors) {
      if (scores.empty()) {
        throw Error(ErrorCode::EmptyClass, "morph " + m.morph_id + " has a contributor without scores");
      }
      check_finite(scores, "attack");
      worst = std::min(worst, *std::max_element(scores.begin(), scores.end()));
      for (double s : scores) {
        ++r.comparisons_total;
        if (s >= threshold) ++r.comparisons_accepted;
      }
    }
    ++r.morphs_total;
    if (worst >= threshold) ++r.morphs_accepted;
  }
  r.mmpmr = static_cast<double>(r.morphs_accepted) / static_cast<double>(r.morphs_total);
  r.comparison_rate = static_cast<double>(r.comparisons_accepted) / static_cast<double>(r.comparisons_total);
  return r;
}

double rmmr(double mmpmr_value, double fnmr) {
  if (!(mmpmr_value >= 0.0 && mmpmr_value <= 1.0) || !(fnmr >= 0.0 && fnmr <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "MMPMR and FNMR must lie in [0, 1]");
  }
  return mmpmr_value + fnmr;
}

VulnerabilityReport vulnerability_report(std::span<const double> genuine, std::span<const double> impostor,
                                         const std::vector<MorphScores>& morphs, double target_fmr) {
  check_finite(genuine, "genuine");
  VulnerabilityReport report;
  report.threshold = threshold_at_fmr(impostor, target_fmr);
  const RecognitionRates rates = recognition_rates(genuine, impostor, report.threshold);
  report.fmr = rates.fmr;
  report.fnmr = rates.fnmr;
  report.morphs = mmpmr(morphs, report.threshold);
  report.rmmr = rmmr(report.morphs.mmpmr, report.fnmr);
  return report;
}

}  // namespace madkit::metrics
