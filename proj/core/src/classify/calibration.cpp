#include "madkit/classify/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "madkit/classify/svm.hpp"
#include "madkit/error.hpp"

namespace madkit::classify {

double Sigmoid::operator()(double f) const noexcept {
  const double z = A * f + B;
  if (z >= 0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

namespace {

struct Targets {
  std::vector<double> t;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Targets targets(std::span<const double> f, std::span<const int> labels) {
  if (f.size() != labels.size()) throw Error(ErrorCode::DimensionMismatch, "calibration sizes differ");
  Targets out;
  for (int y : labels) {
    if (y == kAttack) {
      ++out.positives;
    } else if (y == kBonaFide) {
      ++out.negatives;
    } else {
      throw Error(ErrorCode::InvalidArgument, "labels must be +1 or -1");
    }
  }
  if (out.positives == 0 || out.negatives == 0) {
    throw Error(ErrorCode::EmptyClass, "calibration needs both classes");
  }
  const double hi = (static_cast<double>(out.positives) + 1.0) / (static_cast<double>(out.positives) + 2.0);
  const double lo = 1.0 / (static_cast<double>(out.negatives) + 2.0);
  out.t.reserve(labels.size());
  for (int y : labels) out.t.push_back(y == kAttack ? hi : lo);
  return out;
}

double objective(std::span<const double> f, const std::vector<double>& t, double A, double B) {
  double value = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double z = f[i] * A + B;
    value += z >= 0 ? t[i] * z + std::log1p(std::exp(-z)) : (t[i] - 1.0) * z + std::log1p(std::exp(z));
  }
  return value;
}

}  // namespace

double platt_objective(std::span<const double> f, std::span<const int> labels, double A, double B) {
  return objective(f, targets(f, labels).t, A, B);
}

Sigmoid calibrate(std::span<const double> f, std::span<const int> labels) {
  const Targets tg = targets(f, labels);
  for (double v : f) {
    if (!std::isfinite(v)) throw Error(ErrorCode::Numeric, "non-finite decision value");
  }
  const Sigmoid fallback{-1.0, 0.0, true};
  if (std::all_of(f.begin(), f.end(), [&](double v) { return v == f[0]; })) return fallback;

  constexpr int kMaxIterations = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kRidge = 1e-12;
  constexpr double kEps = 1e-10;
  double A = 0.0;
  double B = std::log((static_cast<double>(tg.negatives) + 1.0) / (static_cast<double>(tg.positives) + 1.0));
  double fval = objective(f, tg.t, A, B);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double h11 = kRidge, h22 = kRidge, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double z = f[i] * A + B;
      double p, q;
      if (z >= 0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += f[i] * f[i] * d2;
      h22 += d2;
      h21 += f[i] * d2;
      const double d1 = tg.t[i] - p;
      g1 += f[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;
    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;
    double step = 1.0;
    while (step >= kMinStep) {
      const double nA = A + step * dA, nB = B + step * dB;
      const double nf = objective(f, tg.t, nA, nB);
      if (nf < fval + 1e-4 * step * gd) {
        A = nA;
        B = nB;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  if (!(A < 0.0) || !std::isfinite(A) || !std::isfinite(B)) return fallback;
  return {A, B, false};
}

}  // namespace madkit::classify
