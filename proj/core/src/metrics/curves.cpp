#include "madkit/metrics/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "madkit/error.hpp"
#include "madkit/metrics/detection.hpp"

namespace madkit::metrics {

std::vector<CurvePoint> det_curve(const ScoreSet& scores) {
  scores.validate();
  std::vector<double> t(scores.negative);
  t.insert(t.end(), scores.positive.begin(), scores.positive.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  constexpr double inf = std::numeric_limits<double>::infinity();
  t.insert(t.begin(), -inf);
  t.push_back(inf);
  std::vector<CurvePoint> curve;
  curve.reserve(t.size());
  for (double v : t) {
    const ErrorRates r = error_rates(scores, v);
    curve.push_back({v, r.apcer, r.bpcer});
  }
  return curve;
}

double det_area(const std::vector<CurvePoint>& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].apcer - curve[i - 1].apcer) * 0.5 * (curve[i].bpcer + curve[i - 1].bpcer);
  }
  return area;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double silverman(std::vector<double> v, double range) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  if (spread > 0.0) return 0.9 * spread * std::pow(n, -0.2);
  return range > 0.0 ? 1e-3 * range : 1e-3 * std::max(1.0, std::abs(mean));
}

ClassDensity density(const std::vector<double>& v, const std::vector<double>& edges,
                     const std::vector<double>& grid, double bandwidth) {
  ClassDensity d;
  const int bins = static_cast<int>(edges.size()) - 1;
  d.bin_mass.assign(static_cast<std::size_t>(bins), 0.0);
  const double lo = edges.front(), width = edges.back() - edges.front();
  for (double x : v) {
    int b = static_cast<int>(std::floor((x - lo) / width * bins));
    b = std::clamp(b, 0, bins - 1);
    d.bin_mass[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& m : d.bin_mass) m /= static_cast<double>(v.size());
  d.bandwidth = bandwidth;
  const double norm = 1.0 / (static_cast<double>(v.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  d.kde.reserve(grid.size());
  for (double g : grid) {
    double s = 0.0;
    for (double x : v) {
      const double z = (g - x) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    d.kde.push_back(s * norm);
  }
  return d;
}

}  // namespace

ScoreDensities score_histograms(const ScoreSet& scores, int bins, int grid_points) {
  scores.validate();
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 histogram bins");
  if (grid_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 grid points");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto* v : {&scores.negative, &scores.positive}) {
    for (double x : *v) lo = std::min(lo, x), hi = std::max(hi, x);
  }
  const double range = hi - lo;
  ScoreDensities out;
  double elo = lo, ehi = hi;
  if (range == 0.0) {
    elo = lo - 0.5;
    ehi = hi + 0.5;
  }
  out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) out.bin_edges[static_cast<std::size_t>(i)] = elo + (ehi - elo) * i / bins;
  out.bin_edges.back() = ehi;
  const double hn = silverman(scores.negative, range);
  const double hp = silverman(scores.positive, range);
  const double pad = 6.0 * std::max(hn, hp);
  const double g0 = lo - pad, g1 = hi + pad;
  out.grid.resize(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    out.grid[static_cast<std::size_t>(i)] = g0 + (g1 - g0) * i / (grid_points - 1);
  }
  out.negative = density(scores.negative, out.bin_edges, out.grid, hn);
  out.positive = density(scores.positive, out.bin_edges, out.grid, hp);
  return out;
}

std::string format_densities_csv(const ScoreDensities& d, const std::string& negative_name,
                                  const std::string& positive_name) {
  std::string out = "series,class,x,value\n";
  char buf[96];
  const int bins = static_cast<int>(d.bin_edges.size()) - 1;
  for (const auto& [name, cls] : {std::pair{&negative_name, &d.negative}, std::pair{&positive_name, &d.positive}}) {
    for (int b = 0; b < bins; ++b) {
      const double centre = 0.5 * (d.bin_edges[static_cast<std::size_t>(b)] + d.bin_edges[static_cast<std::size_t>(b) + 1]);
      std::snprintf(buf, sizeof buf, "histogram,%s,%.17g,%.17g\n", name->c_str(), centre,
                    cls->bin_mass[static_cast<std::size_t>(b)]);
      out += buf;
    }
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
      std::snprintf(buf, sizeof buf, "kde,%s,%.17g,%.17g\n", name->c_str(), d.grid[i], cls->kde[i]);
      out += buf;
    }
  }
  return out;
}

std::string format_det_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "threshold,apcer,bpcer\n";
  char buf[96];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.threshold, p.apcer, p.bpcer);
    out += buf;
  }
  return out;
}

}  // namespace madkit::metrics
