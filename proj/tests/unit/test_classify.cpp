#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "madkit/classify/calibration.hpp"
#include "madkit/classify/model.hpp"
#include "madkit/classify/svm.hpp"
#include "madkit/error.hpp"
#include "../oracles/platt_oracle.hpp"
#include "../oracles/smo_oracle.hpp"
#include "../support/property.hpp"

using namespace madkit;
using namespace madkit::classify;
namespace oracle = madkit_test::oracle;

namespace {

struct Problem {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
};

Problem random_problem(Rng& rng, int n, int dim, double shift) {
  Problem p;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2 == 0 ? kAttack : kBonaFide;
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (auto& v : row) v = rng.normal() + (label == kAttack ? shift : 0.0);
    p.x.push_back(std::move(row));
    p.y.push_back(label);
  }
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no madkit::Error thrown");
  return ErrorCode::Numeric;
}

}  // namespace

TEST_CASE("rbf kernel") {
  const std::vector<double> a{0, 0}, b{1, 1};
  CHECK(rbf_kernel(a, a, 0.7) == 1.0);
  CHECK(rbf_kernel(a, b, 0.5) == doctest::Approx(std::exp(-1.0)));
  CHECK(auto_gamma({{0, 0}, {2, 2}}) == doctest::Approx(0.5));
}

TEST_CASE("solver rejects bad input") {
  SvmParams p;
  CHECK(code_of([&] { solve_svm({{0.0}, {1.0}}, std::vector<int>{1, 1}, p); }) == ErrorCode::EmptyClass);
  CHECK(code_of([&] { solve_svm({{0.0}, {NAN}}, std::vector<int>{1, -1}, p); }) == ErrorCode::Numeric);
  CHECK(code_of([&] { solve_svm({{0.0}, {1.0, 2.0}}, std::vector<int>{1, -1}, p); }) ==
        ErrorCode::DimensionMismatch);
  p.C = 0;
  CHECK(code_of([&] { solve_svm({{0.0}, {1.0}}, std::vector<int>{1, -1}, p); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("two points become support vectors on opposite sides") {
  SvmParams p;
  p.gamma = 0.5;
  const std::vector<std::vector<double>> x{{0.0, 0.0}, {2.0, 1.0}};
  const std::vector<int> y{kAttack, kBonaFide};
  const auto s = solve_svm(x, y, p);
  CHECK(s.alpha[0] > 0);
  CHECK(s.alpha[1] > 0);
  CHECK(s.decision_values[0] > 0);
  CHECK(s.decision_values[1] < 0);
  CHECK(std::abs(s.bias) <= 1e-9);  // symmetric problem: midpoint has f = 0
}

TEST_CASE("rbf separates xor") {
  const std::vector<std::vector<double>> x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> y{kAttack, kAttack, kBonaFide, kBonaFide};
  TrainOptions opt;
  opt.svm.gamma = 1.0;
  const auto r = train(x, y, opt);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK((r.model.decision(x[i]) > 0) == (y[i] > 0));
  CHECK(check_kkt(r.solver_rows, y, r.solution).holds(1e-3));
}

TEST_CASE("smo matches the exhaustive dual on tiny problems") {
  madkit_test::for_all("smo-oracle", 60, [](Rng& rng, int i) {
    const int n = madkit_test::uniform_int(rng, 2, 5), dim = madkit_test::uniform_int(rng, 1, 3);
    const auto prob = random_problem(rng, n, dim, rng.uniform(0, 2));
    SvmParams p;
    p.C = std::array{0.5, 1.0, 10.0}[static_cast<std::size_t>(i % 3)];
    p.gamma = rng.uniform(0.2, 2.0);
    p.tolerance = 1e-9;
    const auto s = solve_svm(prob.x, prob.y, p);
    const auto best = oracle::exhaustive_dual(prob.x, prob.y, p.C, *p.gamma);
    REQUIRE(std::isfinite(best.objective));
    const double obj = dual_objective(prob.x, prob.y, s.alpha, *p.gamma);
    CHECK(std::abs(obj - best.objective) <= 1e-6);
    CHECK(check_kkt(prob.x, prob.y, s).holds(1e-6));
  });
}

TEST_CASE("kkt conditions at the default tolerance") {
  madkit_test::for_all("smo-kkt", 20, [](Rng& rng, int) {
    const auto prob = random_problem(rng, madkit_test::uniform_int(rng, 10, 120), 4, 1.0);
    SvmParams p;
    p.C = rng.uniform(0.1, 20);
    const auto s = solve_svm(prob.x, prob.y, p);
    CHECK(s.converged);
    const auto k = check_kkt(prob.x, prob.y, s);
    CHECK(k.max_violation <= 1e-3);
    CHECK(k.equality_residual <= 1e-9);
    CHECK(k.max_bound_excess <= 1e-9);
  });
}

TEST_CASE("solver is deterministic for a seed") {
  Rng rng(7);
  const auto prob = random_problem(rng, 60, 3, 0.5);
  SvmParams p;
  const auto a = solve_svm(prob.x, prob.y, p);
  const auto b = solve_svm(prob.x, prob.y, p);
  CHECK(a.alpha == b.alpha);
  CHECK(a.bias == b.bias);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("tiny kernel cache gives the same solution") {
  Rng rng(11);
  const auto prob = random_problem(rng, 80, 3, 0.8);
  SvmParams big, small;
  small.cache_megabytes = 0;
  const auto a = solve_svm(prob.x, prob.y, big);
  const auto b = solve_svm(prob.x, prob.y, small);
  CHECK(a.alpha == b.alpha);
}

TEST_CASE("platt calibration") {
  const std::vector<double> sep{-3, -2, -1.5, 1.5, 2, 3};
  const std::vector<int> ys{-1, -1, -1, 1, 1, 1};
  const auto sg = calibrate(sep, ys);
  CHECK(sg.A < 0);
  CHECK_FALSE(sg.fallback);
  CHECK(std::abs(sg.B) <= 1e-6);
  for (std::size_t i = 0; i < sep.size(); ++i) CHECK((sg(sep[i]) > 0.5) == (ys[i] > 0));

  const auto flat = calibrate(std::vector<double>{0.3, 0.3, 0.3}, std::vector<int>{1, -1, 1});
  CHECK(flat.fallback);
  CHECK(flat.A == -1.0);
  CHECK(flat.B == 0.0);

  madkit_test::for_all("platt", 15, [](Rng& rng, int) {
    const int n = madkit_test::uniform_int(rng, 6, 40);
    std::vector<double> f;
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      y.push_back(i % 2 ? 1 : -1);
      f.push_back(rng.normal() + (y.back() > 0 ? 1.0 : -0.5));
    }
    const auto fit = calibrate(f, y);
    const auto [A, B] = oracle::platt_fit(f, y);
    CHECK(std::abs(fit.A - A) <= 1e-4);
    CHECK(std::abs(fit.B - B) <= 1e-4);
    CHECK(platt_objective(f, y, fit.A, fit.B) <= platt_objective(f, y, A, B) + 1e-9);
  });
}

TEST_CASE("trained model scores") {
  Rng rng(3);
  const auto prob = random_problem(rng, 80, 3, 3.0);
  TrainOptions opt;
  const auto r = train(prob.x, prob.y, opt);
  const auto& m = r.model;
  CHECK(check_kkt(r.solver_rows, prob.y, r.solution).holds(1e-3));
  for (std::size_t i = 0; i < prob.x.size(); ++i) {
    const double s = m.score(prob.x[i]);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
  // a well-inside training attack point
  CHECK(m.score(std::vector<double>{3, 3, 3}) > 0.5);
  CHECK(code_of([&] { m.score(std::vector<double>{1, 2}); }) == ErrorCode::DimensionMismatch);

  SUBCASE("batch equals one by one") {
    const auto batch = m.score_batch(prob.x, 4);
    for (std::size_t i = 0; i < prob.x.size(); ++i) CHECK(batch[i] == m.score(prob.x[i]));
  }
  SUBCASE("support vector order does not matter") {
    MadModel shuffled = m;
    std::vector<std::size_t> idx(m.support_vectors.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = idx.size() - 1 - i;
    for (std::size_t i = 1; i < idx.size(); ++i) std::swap(idx[i], idx[rng.below(i + 1)]);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      shuffled.support_vectors[i] = m.support_vectors[idx[i]];
      shuffled.coefficients[i] = m.coefficients[idx[i]];
    }
    for (const auto& x : prob.x) CHECK(shuffled.score(x) == m.score(x));
  }
  SUBCASE("single class and non-finite input") {
    std::vector<int> one(prob.y.size(), kAttack);
    CHECK(code_of([&] { train(prob.x, one, opt); }) == ErrorCode::EmptyClass);
    auto bad = prob.x;
    bad[3][1] = INFINITY;
    CHECK(code_of([&] { train(bad, prob.y, opt); }) == ErrorCode::Numeric);
  }
}

TEST_CASE("relabeling flips the score") {
  Rng rng(5);
  const auto prob = random_problem(rng, 50, 2, 1.0);
  std::vector<int> flipped(prob.y.size());
  std::transform(prob.y.begin(), prob.y.end(), flipped.begin(), [](int v) { return -v; });
  TrainOptions opt;
  opt.svm.tolerance = 1e-9;
  const auto a = train(prob.x, prob.y, opt).model;
  const auto b = train(prob.x, flipped, opt).model;
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{rng.normal(), rng.normal()};
    CHECK(std::abs(a.score(x) - (1.0 - b.score(x))) <= 1e-6);
  }
}

TEST_CASE("model persistence") {
  Rng rng(9);
  const auto prob = random_problem(rng, 60, 4, 1.2);
  TrainOptions opt;
  opt.standardize = true;
  ModelMetadata meta;
  meta.extractor = "synthetic";
  meta.train_manifest_id = "train";
  meta.train_subjects = {"s2", "s1"};
  const auto m = train(prob.x, prob.y, opt, meta).model;
  CHECK(m.metadata.train_subjects == std::vector<std::string>{"s1", "s2"});
  CHECK(m.metadata.gamma_rule == "auto");

  const std::string text = format_model(m);
  const auto back = parse_model(text);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.normal() * 2;
    CHECK(back.score(x) == m.score(x));
  }
  CHECK(format_model(back) == text);

  const auto dir = std::filesystem::temp_directory_path() / "madkit_model_test";
  std::filesystem::create_directories(dir);
  save_model(m, dir / "m.json");
  CHECK(load_model(dir / "m.json").bias == m.bias);

  CHECK(code_of([&] { parse_model(text.substr(0, text.size() / 2)); }) == ErrorCode::CorruptModel);
  try {
    parse_model(text.substr(0, text.size() / 2));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("corrupt model") != std::string::npos);
  }
  std::string wrong = text;
  const auto pos = wrong.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  wrong.replace(pos, 12, "\"version\": 99");
  CHECK(code_of([&] { parse_model(wrong); }) == ErrorCode::CorruptModel);

  MadModel empty = m;
  empty.support_vectors.clear();
  empty.coefficients.clear();
  CHECK(code_of([&] { format_model(empty); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { load_model(dir / "missing.json"); }) == ErrorCode::Io);
  std::filesystem::remove_all(dir);
}
