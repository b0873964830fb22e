#include "madkit/metrics/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "madkit/error.hpp"

namespace madkit::metrics {

namespace {

struct Sorted {
  std::vector<double> negative;
  std::vector<double> positive;

  explicit Sorted(const ScoreSet& s) : negative(s.negative), positive(s.positive) {
    s.validate();
    std::sort(negative.begin(), negative.end());
    std::sort(positive.begin(), positive.end());
  }

  ErrorRates at(double t) const {
    const auto below = std::lower_bound(positive.begin(), positive.end(), t) - positive.begin();
    const auto at_or_above = negative.end() - std::lower_bound(negative.begin(), negative.end(), t);
    return {static_cast<double>(below) / static_cast<double>(positive.size()),
            static_cast<double>(at_or_above) / static_cast<double>(negative.size())};
  }
};

std::vector<double> candidates(const Sorted& s) {
  std::vector<double> distinct;
  distinct.reserve(s.negative.size() + s.positive.size());
  std::merge(s.negative.begin(), s.negative.end(), s.positive.begin(), s.positive.end(),
             std::back_inserter(distinct));
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> out;
  out.reserve(2 * distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    if (i > 0) {
      const double mid = distinct[i - 1] + 0.5 * (distinct[i] - distinct[i - 1]);
      if (mid > distinct[i - 1] && mid < distinct[i]) out.push_back(mid);
    }
    out.push_back(distinct[i]);
  }
  return out;
}

}  // namespace

ErrorRates error_rates(const ScoreSet& scores, double threshold) {
  return Sorted(scores).at(threshold);
}

std::vector<double> candidate_thresholds(const ScoreSet& scores) { return candidates(Sorted(scores)); }

OperatingPoint deer(const ScoreSet& scores) {
  const Sorted s(scores);
  std::vector<double> cand = candidates(s);
  cand.push_back(std::nextafter(cand.back(), std::numeric_limits<double>::infinity()));
  double prev_t = cand.front();
  ErrorRates prev = s.at(prev_t);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const ErrorRates r = s.at(cand[i]);
    const double d = r.apcer - r.bpcer;
    if (d >= 0.0) {
      if (d == 0.0 || i == 0) return {r.apcer, cand[i]};
      const double dp = prev.apcer - prev.bpcer;
      const double w = -dp / (d - dp);
      return {prev.apcer + w * (r.apcer - prev.apcer), prev_t + w * (cand[i] - prev_t)};
    }
    prev = r;
    prev_t = cand[i];
  }
  throw Error(ErrorCode::Numeric, "D-EER sweep found no crossing");
}

OperatingPoint bpcer_at_apcer(const ScoreSet& scores, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "APCER target must lie in (0, 1)");
  }
  const Sorted s(scores);
  const std::vector<double> cand = candidates(s);
  OperatingPoint best{s.at(cand.front()).bpcer, cand.front()};
  for (double t : cand) {
    const ErrorRates r = s.at(t);
    if (r.apcer > target) break;
    best = {r.bpcer, t};
  }
  return best;
}

}  // namespace madkit::metrics
