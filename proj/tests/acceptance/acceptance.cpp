// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "madkit/classify/model.hpp"
#include "madkit/degrade/codec.hpp"
#include "madkit/degrade/print_scan.hpp"
#include "madkit/features/difference.hpp"
#include "madkit/features/synthetic_embeddings.hpp"
#include "madkit/features/texture.hpp"
#include "madkit/metrics/detection.hpp"
#include "madkit/metrics/mds.hpp"
#include "madkit/metrics/vulnerability.hpp"
#include "madkit/morph/delaunay.hpp"
#include "madkit/morph/morph.hpp"
#include "madkit/protocol/comparisons.hpp"
#include "madkit/protocol/synthetic_dataset.hpp"
#include "madkit/synthetic/faces.hpp"
#include "oracles/geometry_oracle.hpp"
#include "oracles/metrics_oracle.hpp"
#include "oracles/smo_oracle.hpp"
#include "support/property.hpp"

using namespace madkit;
namespace oracle = madkit_test::oracle;

namespace {

// Pinned tolerances and limits.
constexpr int kSmoProblems = 200;
constexpr double kSmoObjectiveTol = 1e-6;
constexpr double kSmoSeconds = 10.0;
constexpr double kKktTol = 1e-3;
constexpr double kKktEqualityTol = 1e-9;
constexpr int kMetricSets = 100;
constexpr int kMetricMaxPerClass = 1000;
constexpr double kMetricTol = 1e-9;
constexpr int kRmmrCases = 200;
constexpr double kRoundTripMae = 2.0;
constexpr int kRoundTripPairs = 10;
constexpr int kDelaunaySets = 100;
constexpr int kDelaunayMaxPoints = 200;
constexpr double kE2eDeer = 0.05;
constexpr double kE2eSeconds = 120.0;
constexpr int kMonotonicSeeds = 5;
constexpr double kTargetFmr = 0.001;
constexpr double kDegradeDeltaPp = 10.0;
constexpr int kCompressionImages = 10;
constexpr std::size_t kTargetBytes = 15360;
constexpr double kMdsTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Every trained solution is recorded here for the KKT criterion.
struct KktCase {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  classify::SvmSolution solution;
};
std::vector<KktCase> trained;

void record(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
            const classify::SvmSolution& s) {
  trained.push_back({rows, labels, s});
}

// ---------------------------------------------------------------------------

Outcome smo_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int bad = 0;
  madkit_test::for_all("accept-smo", kSmoProblems, [&](Rng& rng, int i) {
    const int n = madkit_test::uniform_int(rng, 2, 5), dim = madkit_test::uniform_int(rng, 1, 3);
    std::vector<std::vector<double>> x(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim)));
    std::vector<int> y(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      for (auto& v : x[static_cast<std::size_t>(k)]) v = rng.uniform(-2, 2);
      y[static_cast<std::size_t>(k)] = k == 0 ? 1 : (k == 1 ? -1 : (rng.bernoulli(0.5) ? 1 : -1));
    }
    classify::SvmParams p;
    p.C = std::array{0.5, 1.0, 10.0}[static_cast<std::size_t>(i % 3)];
    p.gamma = rng.uniform(0.2, 2.0);
    p.tolerance = 1e-9;
    const auto s = classify::solve_svm(x, y, p);
    record(x, y, s);
    const auto best = oracle::exhaustive_dual(x, y, p.C, *p.gamma);
    const double gap = std::abs(classify::dual_objective(x, y, s.alpha, *p.gamma) - best.objective);
    worst = std::max(worst, gap);
    bad += !(gap <= kSmoObjectiveTol);
  });
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kSmoSeconds,
          fmt("%d problems, max |dual gap| %.2e (tol %.0e), %.2f s (limit %.0f s)", kSmoProblems, worst,
              kSmoObjectiveTol, secs, kSmoSeconds)};
}

Outcome kkt_suite() {
  // Larger problems at the default solver tolerance join the tiny ones.
  madkit_test::for_all("accept-kkt", 20, [](Rng& rng, int) {
    const int n = madkit_test::uniform_int(rng, 20, 200), dim = madkit_test::uniform_int(rng, 2, 8);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int k = 0; k < n; ++k) {
      const int label = k % 2 ? 1 : -1;
      std::vector<double> row(static_cast<std::size_t>(dim));
      for (auto& v : row) v = rng.normal() + 0.7 * label;
      x.push_back(std::move(row));
      y.push_back(label);
    }
    classify::SvmParams p;
    p.C = rng.uniform(0.1, 20.0);
    record(x, y, classify::solve_svm(x, y, p));
  });
  int bad = 0;
  double worst = 0.0, worst_eq = 0.0;
  for (const auto& c : trained) {
    const auto k = classify::check_kkt(c.rows, c.labels, c.solution);
    worst = std::max(worst, k.max_violation);
    worst_eq = std::max(worst_eq, k.equality_residual);
    bad += !k.holds(kKktTol, kKktEqualityTol);
  }
  return {bad == 0 && !trained.empty(),
          fmt("%zu models, max violation %.2e (tol %.0e), max |sum a*y| %.2e (tol %.0e)", trained.size(), worst,
              kKktTol, worst_eq, kKktEqualityTol)};
}

Outcome metric_oracles() {
  std::map<std::string, double> worst{{"deer", 0}, {"bpcer_at_apcer", 0}, {"error_rates", 0},
                                      {"threshold_at_fmr", 0}, {"mmpmr", 0}};
  auto track = [&](const char* k, double a, double b) {
    const double d = (a == b) ? 0.0 : std::abs(a - b);
    worst[k] = std::max(worst[k], std::isnan(d) ? INFINITY : d);
  };
  madkit_test::for_all("accept-metrics", kMetricSets, [&](Rng& rng, int i) {
    const int nb = madkit_test::uniform_int(rng, 1, kMetricMaxPerClass);
    const int na = madkit_test::uniform_int(rng, 1, kMetricMaxPerClass);
    const auto s = madkit_test::random_scores(rng, nb, na, rng.uniform(0, 3), i % 2 ? 8 : 0);
    const auto d = metrics::deer(s);
    const auto od = oracle::deer(s);
    track("deer", d.rate, od.rate);
    for (double target : {0.05, 0.10, 0.2}) {
      track("bpcer_at_apcer", metrics::bpcer_at_apcer(s, target).rate, oracle::bpcer_at_apcer(s, target).rate);
    }
    for (double t : {-1.0, 0.0, 0.5, 1.5, d.threshold}) {
      const auto r = metrics::error_rates(s, t);
      const auto o = oracle::count_rates(s, t);
      track("error_rates", r.apcer, o.apcer);
      track("error_rates", r.bpcer, o.bpcer);
    }
    for (double target : {0.001, 0.01, 0.1}) {
      track("threshold_at_fmr", metrics::threshold_at_fmr(s.negative, target),
            oracle::threshold_at_fmr(s.negative, target));
    }
    std::vector<metrics::MorphScores> morphs;
    std::size_t next = 0;
    while (next + 2 <= s.positive.size() && morphs.size() < 200) {
      metrics::MorphScores m;
      m.morph_id = std::to_string(morphs.size());
      for (int c = 0; c < 2; ++c) {
        const std::size_t take = std::min<std::size_t>(1 + rng.below(3), s.positive.size() - next);
        if (take == 0) break;
        m.contributors.emplace_back(s.positive.begin() + static_cast<std::ptrdiff_t>(next),
                                    s.positive.begin() + static_cast<std::ptrdiff_t>(next + take));
        next += take;
      }
      if (m.contributors.size() == 2) morphs.push_back(std::move(m));
    }
    if (!morphs.empty()) {
      for (double t : {0.0, 0.8, 1.6}) track("mmpmr", metrics::mmpmr(morphs, t).mmpmr, oracle::mmpmr(morphs, t));
    }
  });
  bool ok = true;
  std::string detail = fmt("%d sets:", kMetricSets);
  for (const auto& [k, v] : worst) {
    ok = ok && v <= kMetricTol;
    detail += fmt(" %s %.1e", k.c_str(), v);
  }
  return {ok, detail + fmt(" (tol %.0e)", kMetricTol)};
}

Outcome rmmr_identity() {
  int bad = 0;
  madkit_test::for_all("accept-rmmr", kRmmrCases, [&](Rng& rng, int) {
    std::vector<metrics::MorphScores> morphs(1 + rng.below(40));
    for (auto& m : morphs) {
      m.contributors.resize(2);
      for (auto& c : m.contributors) {
        c.resize(1 + rng.below(4));
        for (auto& v : c) v = rng.uniform();
      }
    }
    std::vector<double> impostor(50 + rng.below(500));
    for (auto& v : impostor) v = rng.uniform(0.0, 0.6);
    std::vector<double> genuine(10 + rng.below(50));
    const double t = metrics::threshold_at_fmr(impostor, kTargetFmr);
    for (auto& v : genuine) v = t + rng.uniform(0.0, 1.0);  // FNMR = 0
    const auto rep = metrics::vulnerability_report(genuine, impostor, morphs, kTargetFmr);
    const double m = metrics::mmpmr(morphs, rng.uniform()).mmpmr;
    bad += !(rep.fnmr == 0.0 && rep.rmmr == rep.morphs.mmpmr && metrics::rmmr(m, 0.0) == m);
  });
  return {bad == 0, fmt("%d randomized cases, %d mismatches", kRmmrCases, bad)};
}

// Aligned 360x480 pairs: the generator's pixel-unit geometry (given for 720
// px wide faces) scaled with the image. `unscaled` keeps the 720 px values.
double round_trip_mae(bool unscaled, int& identity_failures) {
  synthetic::FaceConfig cfg;
  cfg.width = 360;
  cfg.height = 480;
  cfg.inter_eye = 90;
  synthetic::SampleVariation var;
  var.noise_sigma = 0;
  if (!unscaled) {
    cfg.shape_sigma /= 2;
    var.pose_sigma /= 2;
  }
  double worst = 0.0;
  for (int k = 0; k < kRoundTripPairs; ++k) {
    const auto a = synthetic::render_sample(synthetic::make_identity(1000 + k, cfg), 1, var, cfg);
    const auto b = synthetic::render_sample(synthetic::make_identity(2000 + k, cfg), 2, var, cfg);
    const auto lm_a = morph::augment_landmarks(a.landmarks, cfg.width, cfg.height);
    const auto lm_b = morph::augment_landmarks(b.landmarks, cfg.width, cfg.height);
    if (k < 3 && !unscaled) {
      for (double alpha : {0.25, 0.5, 0.75}) {
        identity_failures += !(morph::morph(a.image, a.image, lm_a, lm_a, {alpha}).image == a.image);
      }
      identity_failures += !(morph::demorph(a.image, lm_a, b.image, lm_b, 0.0).image == a.image);
    }
    const auto m = morph::morph(a.image, b.image, lm_a, lm_b, {0.5});
    const auto back = morph::demorph(m.image, m.landmarks, b.image, lm_b, 0.5);
    worst = std::max(worst, mean_absolute_error(back.image, a.image));
  }
  return worst;
}

Outcome morph_identities() {
  int identity_failures = 0;
  const double mae = round_trip_mae(false, identity_failures);
  const double unscaled = round_trip_mae(true, identity_failures);
  return {identity_failures == 0 && mae <= kRoundTripMae,
          fmt("%d identity mismatches; round trip on %d aligned pairs: max MAE %.3f (limit %.1f; "
              "unscaled geometry %.3f, informational)",
              identity_failures, kRoundTripPairs, mae, kRoundTripMae, unscaled)};
}

std::set<std::array<Point2, 3>> triangle_set(const morph::TriangleMesh& mesh) {
  std::set<std::array<Point2, 3>> out;
  for (const auto& t : mesh.triangles) {
    std::array<Point2, 3> tri{mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
    std::sort(tri.begin(), tri.end());
    out.insert(tri);
  }
  return out;
}

Outcome delaunay_property() {
  int violations = 0, permutation_mismatches = 0, tested = 0;
  madkit_test::for_all("accept-delaunay", kDelaunaySets, [&](Rng& rng, int i) {
    auto pts = madkit_test::random_points(rng, madkit_test::uniform_int(rng, 3, kDelaunayMaxPoints), 100.0,
                                          i % 3 == 0 ? 12 : 0);
    bool collinear = true;
    for (std::size_t k = 2; k < pts.size(); ++k) collinear = collinear && oracle::signed_area2(pts[0], pts[1], pts[k]) == 0;
    if (collinear) pts.push_back({pts[0].x + 0.5, pts[0].y + 101.0});
    ++tested;
    const auto mesh = morph::delaunay(pts);
    violations += oracle::empty_circle_violations(mesh);
    const auto base = triangle_set(mesh);
    for (std::size_t k = pts.size() - 1; k > 0; --k) std::swap(pts[k], pts[rng.below(k + 1)]);
    permutation_mismatches += triangle_set(morph::delaunay(pts)) != base;
  });
  return {violations == 0 && permutation_mismatches == 0,
          fmt("%d sets (n <= %d): %d empty-circle violations, %d permutation mismatches", tested, kDelaunayMaxPoints,
              violations, permutation_mismatches)};
}

// Synthetic embedding experiment -------------------------------------------

DatasetManifest synthetic_split(const std::string& id, const std::string& prefix, int subjects, std::uint64_t seed,
                                double alpha = 0.5) {
  protocol::SyntheticDatasetConfig cfg;
  cfg.manifest_id = id;
  cfg.subject_prefix = prefix;
  cfg.subjects = subjects;
  cfg.alpha = alpha;
  cfg.seed = seed;
  return protocol::synthetic_manifest(cfg);
}

struct Rows {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
};

Rows difference_rows(const DatasetManifest& m, const std::function<std::span<const double>(const std::string&)>& f) {
  const auto set = protocol::enumerate_comparisons(m);
  Rows r;
  for (const auto& c : set.genuine) {
    r.x.push_back(features::combine_difference(f(c.reference_id), f(c.probe_id)));
    r.y.push_back(classify::kBonaFide);
  }
  for (const auto& c : set.attacks) {
    r.x.push_back(features::combine_difference(f(c.reference_id), f(c.probe_id)));
    r.y.push_back(classify::kAttack);
  }
  return r;
}

double detection_eer(const Rows& train, const Rows& test) {
  classify::TrainOptions opt;
  const auto result = classify::train(train.x, train.y, opt);
  record(result.solver_rows, train.y, result.solution);
  ScoreSet s;
  for (std::size_t i = 0; i < test.x.size(); ++i) {
    (test.y[i] == classify::kAttack ? s.positive : s.negative).push_back(result.model.score(test.x[i]));
  }
  return metrics::deer(s).rate;
}

Outcome synthetic_end_to_end() {
  const auto t0 = Clock::now();
  const auto train_m = synthetic_split("train", "tr", 200, 101);
  const auto test_m = synthetic_split("test", "te", 100, 202);
  features::SyntheticConfig emb;
  emb.dim = 512;
  emb.sigma = 0.05;
  emb.seed = 303;
  const auto train_e = features::synthesize_embeddings(emb, train_m);
  emb.seed = 404;
  const auto test_e = features::synthesize_embeddings(emb, test_m);
  const auto train = difference_rows(train_m, [&](const std::string& id) { return train_e.at(id).values(); });
  const auto test = difference_rows(test_m, [&](const std::string& id) { return test_e.at(id).values(); });
  const double eer = detection_eer(train, test);
  const double secs = seconds_since(t0);
  return {eer <= kE2eDeer && secs < kE2eSeconds,
          fmt("dim 512, 200+100 identities: D-EER %.4f (limit %.2f), %.1f s (limit %.0f s)", eer, kE2eDeer, secs,
              kE2eSeconds)};
}

double attacker_acceptance(std::uint64_t seed, double alpha) {
  const auto m = synthetic_split("vuln", "v", 200, seed, alpha);
  features::SyntheticConfig emb;
  emb.dim = 512;
  emb.sigma = 0.05;
  emb.seed = derive_seed(seed, "embeddings");
  const auto e = features::synthesize_embeddings(emb, m);
  const auto set = protocol::enumerate_comparisons(m, protocol::AttackConvention::AttackerOnly);
  std::vector<double> impostor;
  for (const auto& c : set.impostor) impostor.push_back(cosine_similarity(e.at(c.reference_id), e.at(c.probe_id)));
  const double t = metrics::threshold_at_fmr(impostor, kTargetFmr);
  std::size_t accepted = 0;
  for (const auto& c : set.attacks) accepted += cosine_similarity(e.at(c.reference_id), e.at(c.probe_id)) >= t;
  return static_cast<double>(accepted) / static_cast<double>(set.attacks.size());
}

Outcome weight_monotonicity() {
  int ok = 0;
  std::string detail;
  for (int k = 0; k < kMonotonicSeeds; ++k) {
    const std::uint64_t seed = 500 + static_cast<std::uint64_t>(k);
    const double low = attacker_acceptance(seed, 0.25), mid = attacker_acceptance(seed, 0.5);
    ok += low < mid;
    detail += fmt(" %.3f<%.3f", low, mid);
  }
  return {ok == kMonotonicSeeds, fmt("attacker acceptance a=0.25 vs a=0.5 over %d seeds:", kMonotonicSeeds) + detail};
}

// Image pipeline -----------------------------------------------------------

struct ImageCorpus {
  DatasetManifest manifest;
  std::map<std::string, RasterImage> images;  // bona fide images and morphs, grayscale
};

ImageCorpus render_corpus(const std::string& id, const std::string& prefix, int subjects, std::uint64_t seed) {
  ImageCorpus c;
  c.manifest = synthetic_split(id, prefix, subjects, seed);
  synthetic::FaceConfig cfg;
  cfg.width = 360;
  cfg.height = 480;
  cfg.inter_eye = 90;
  cfg.color = false;
  synthetic::SampleVariation var;
  var.grayscale = true;
  std::map<std::string, LandmarkSet> landmarks;
  for (const auto& s : c.manifest.subjects) {
    const auto identity = synthetic::make_identity(derive_seed(seed, s.id), cfg);
    for (const auto& img : s.images) {
      auto sample = synthetic::render_sample(identity, derive_seed(seed, img.id), var, cfg);
      landmarks[img.id] = morph::augment_landmarks(sample.landmarks, cfg.width, cfg.height);
      c.images[img.id] = std::move(sample.image);
    }
  }
  for (const auto& p : c.manifest.morph_pairs) {
    c.images[p.id] = morph::morph(c.images.at(p.image_a), c.images.at(p.image_b), landmarks.at(p.image_a),
                                  landmarks.at(p.image_b), {p.alpha})
                         .image;
  }
  return c;
}

// LBP difference rows after applying `mode` to every reference-side image.
Rows lbp_rows(const ImageCorpus& c, PostProcessing mode, const degrade::LossyCodec& codec) {
  std::set<std::string> reference_side;
  for (const auto* img : c.manifest.images_with_role(ImageRole::BonaFideReference)) reference_side.insert(img->id);
  for (const auto& p : c.manifest.morph_pairs) reference_side.insert(p.id);
  features::TextureOptions opt{1, features::HistogramNorm::Probability};
  std::map<std::string, std::vector<double>> hist;
  for (const auto& [id, img] : c.images) {
    if (reference_side.count(id)) {
      degrade::DegradeConfig cfg;
      cfg.mode = mode;
      cfg.seed = derive_seed(7, id);
      hist[id] = features::lbp_histogram(degrade::apply_post_processing(img, cfg, codec).image, opt);
    } else {
      hist[id] = features::lbp_histogram(img, opt);
    }
  }
  return difference_rows(c.manifest, [&](const std::string& id) -> std::span<const double> { return hist.at(id); });
}

Outcome degradation_robustness() {
  const auto codec = degrade::make_default_codec();
  const auto train = render_corpus("img-train", "itr", 40, 11);
  const auto test = render_corpus("img-test", "ite", 24, 12);
  const double npp = detection_eer(lbp_rows(train, PostProcessing::NPP, *codec), lbp_rows(test, PostProcessing::NPP, *codec));
  const double ps = detection_eer(lbp_rows(train, PostProcessing::PSJP2, *codec), lbp_rows(test, PostProcessing::PSJP2, *codec));
  const double delta = std::abs(ps - npp) * 100.0;
  return {delta <= kDegradeDeltaPp, fmt("LBP D-EER NPP %.3f vs PS-JP2 %.3f (%s): |delta| %.1f pp (limit %.0f pp)", npp,
                                        ps, codec->name().c_str(), delta, kDegradeDeltaPp)};
}

Outcome compression() {
  const auto codec = degrade::make_default_codec();
  synthetic::FaceConfig cfg;
  cfg.width = 360;
  cfg.height = 480;
  cfg.inter_eye = 90;
  std::size_t largest = 0;
  int bad = 0;
  for (int k = 0; k < kCompressionImages; ++k) {
    RasterImage img;
    if (k < kCompressionImages - 2) {
      img = synthetic::render_sample(synthetic::make_identity(900 + k, cfg), 3, {}, cfg).image;
    } else {
      Rng rng(static_cast<std::uint64_t>(k));
      img = madkit_test::random_image(rng, 360, 480, k % 2 ? 3 : 1);  // worst case: incompressible noise
    }
    const auto r = degrade::compress_to_size(img, kTargetBytes, *codec);
    largest = std::max(largest, r.bytes.size());
    const auto back = codec->decode(r.bytes);
    bad += !(r.bytes.size() <= kTargetBytes && back.same_shape(img));
  }
  return {bad == 0, fmt("%d images 360x480 (%s): largest %zu bytes (target %zu), %d failures", kCompressionImages,
                        codec->name().c_str(), largest, kTargetBytes, bad)};
}

double pair_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double max_distance_error(const std::vector<std::vector<double>>& in, const metrics::MdsResult& r) {
  double worst = 0;
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = i + 1; j < in.size(); ++j)
      worst = std::max(worst, std::abs(pair_distance(in[i], in[j]) - pair_distance(r.coordinates[i], r.coordinates[j])));
  return worst;
}

Outcome mds() {
  double worst = 0;
  madkit_test::for_all("accept-mds", 100, [&](Rng& rng, int) {
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(madkit_test::uniform_int(rng, 3, 60)));
    for (auto& p : pts) p = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
    worst = std::max(worst, max_distance_error(pts, metrics::classical_mds(pts, 2)));
  });
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<std::vector<double>> tri{{0, 0}, {1, 0}, {0.5, h}};
  const auto r = metrics::classical_mds(tri, 2);
  const double tri_err = max_distance_error(tri, r);
  return {worst <= kMdsTol && tri_err <= kMdsTol,
          fmt("100 random 2-D sets: max distance error %.1e; equilateral triangle %.1e (tol %.0e)", worst, tri_err,
              kMdsTol)};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion("smo-vs-exhaustive-dual", smo_oracle);
  criterion("metric-oracles", metric_oracles);
  criterion("rmmr-identity", rmmr_identity);
  criterion("morph-identities", morph_identities);
  criterion("delaunay-empty-circle", delaunay_property);
  criterion("synthetic-end-to-end", synthetic_end_to_end);
  criterion("morph-weight-monotonicity", weight_monotonicity);
  criterion("degradation-robustness", degradation_robustness);
  criterion("compress-to-size", compression);
  criterion("mds-distances", mds);
  criterion("kkt-all-trained-models", kkt_suite);  // last: covers every model trained above
  std::printf("%s  %d failing criteria, %.1f s\n", failures == 0 ? "PASS" : "FAIL", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
