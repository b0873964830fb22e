#include <benchmark/benchmark.h>

#include <vector>

#include "madkit/classify/svm.hpp"
#include "madkit/features/texture.hpp"
#include "madkit/metrics/detection.hpp"
#include "madkit/morph/delaunay.hpp"
#include "madkit/morph/morph.hpp"
#include "madkit/rng.hpp"
#include "madkit/synthetic/faces.hpp"

using namespace madkit;

namespace {

void BM_SolveSvm(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2 ? 1 : -1;
    std::vector<double> row(32);
    for (auto& v : row) v = rng.normal() + 0.3 * label;
    x.push_back(std::move(row));
    y.push_back(label);
  }
  classify::SvmParams p;
  for (auto _ : state) benchmark::DoNotOptimize(classify::solve_svm(x, y, p));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolveSvm)->Arg(200)->Arg(800)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Delaunay(benchmark::State& state) {
  Rng rng(2);
  std::vector<Point2> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {rng.uniform(0, 1000), rng.uniform(0, 1000)};
  for (auto _ : state) benchmark::DoNotOptimize(morph::delaunay(pts));
}
BENCHMARK(BM_Delaunay)->Arg(76)->Arg(500)->Arg(2000);

struct Pair {
  synthetic::FaceSample a, b;
  LandmarkSet lm_a, lm_b;
};

Pair face_pair(int width, int height) {
  synthetic::FaceConfig cfg;
  cfg.width = width;
  cfg.height = height;
  cfg.inter_eye = width / 4.0;
  Pair p{synthetic::render_sample(synthetic::make_identity(1, cfg), 1, {}, cfg),
         synthetic::render_sample(synthetic::make_identity(2, cfg), 2, {}, cfg), {}, {}};
  p.lm_a = morph::augment_landmarks(p.a.landmarks, width, height);
  p.lm_b = morph::augment_landmarks(p.b.landmarks, width, height);
  return p;
}

void BM_Morph(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const auto p = face_pair(w, w * 4 / 3);
  for (auto _ : state) benchmark::DoNotOptimize(morph::morph(p.a.image, p.b.image, p.lm_a, p.lm_b, {0.5}));
}
BENCHMARK(BM_Morph)->Arg(360)->Arg(720)->Unit(benchmark::kMillisecond);

void BM_Deer(benchmark::State& state) {
  Rng rng(3);
  ScoreSet s;
  for (int i = 0; i < state.range(0); ++i) {
    s.negative.push_back(rng.normal());
    s.positive.push_back(rng.normal() + 1.5);
  }
  for (auto _ : state) benchmark::DoNotOptimize(metrics::deer(s));
}
BENCHMARK(BM_Deer)->Arg(1000)->Arg(100000);

void BM_LbpHistogram(benchmark::State& state) {
  const auto p = face_pair(360, 480);
  const auto gray = to_grayscale(p.a.image);
  for (auto _ : state) benchmark::DoNotOptimize(features::lbp_histogram(gray));
}
BENCHMARK(BM_LbpHistogram)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
