#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>

#include "madkit/embedding.hpp"
#include "madkit/error.hpp"
#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"
#include "madkit/manifest.hpp"
#include "madkit/parallel.hpp"
#include "madkit/rng.hpp"
#include "madkit/scores.hpp"
#include "../support/fixtures.hpp"
#include "../support/property.hpp"

using namespace madkit;

namespace {
std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "madkit_core_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_CASE("rng draws are reproducible and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng c(1);
  for (int i = 0; i < 1000; ++i) CHECK(c.below(7) < 7);
  CHECK(derive_seed(1, "x") != derive_seed(1, "y"));
  CHECK(derive_seed(1, "x") != derive_seed(2, "x"));
  CHECK(derive_seed(1, "x") == derive_seed(1, "x"));

  Rng n(3);
  double sum = 0, sq = 0;
  const int count = 20000;
  for (int i = 0; i < count; ++i) {
    const double v = n.normal();
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / count) < 0.05);
  CHECK(std::abs(sq / count - 1.0) < 0.05);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw Error(ErrorCode::Numeric, "boom");
                               }),
                  Error);
}

TEST_CASE("quantize rounds half to even and clamps") {
  CHECK(quantize(0.5) == 0);
  CHECK(quantize(1.5) == 2);
  CHECK(quantize(2.5) == 2);
  CHECK(quantize(2.5000001) == 3);
  CHECK(quantize(-3.0) == 0);
  CHECK(quantize(300.0) == 255);
  CHECK(quantize(254.5) == 254);
}

TEST_CASE("raster image basics") {
  RasterImage img(4, 3, 3, 9);
  CHECK(img.data().size() == 36);
  img.at(3, 2, 2) = 200;
  CHECK(img.at(3, 2, 2) == 200);
  CHECK_THROWS_AS(RasterImage(0, 3, 1), Error);
  CHECK_THROWS_AS(RasterImage(2, 2, 2), Error);
  CHECK_THROWS_AS(RasterImage(2, 2, 1, std::vector<std::uint8_t>(3)), Error);

  RasterImage rgb(1, 1, 3);
  rgb.at(0, 0, 0) = 255;
  rgb.at(0, 0, 1) = 255;
  rgb.at(0, 0, 2) = 255;
  CHECK(to_grayscale(rgb).at(0, 0) == 255);
  CHECK(to_grayscale(rgb).channels() == 1);

  const RasterImage a(8, 8, 1, 10), b(8, 8, 1, 12);
  CHECK(mean_absolute_error(a, b) == 2.0);
  CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());
  CHECK(psnr(a, b) == doctest::Approx(10 * std::log10(255.0 * 255.0 / 4.0)));
}

TEST_CASE("png round trip is lossless") {
  Rng rng(5);
  for (int ch : {1, 3}) {
    const auto img = madkit_test::random_image(rng, 17, 9, ch);
    const auto path = scratch("img" + std::to_string(ch) + ".png");
    write_png(img, path);
    CHECK(read_png(path) == img);
  }
  CHECK_THROWS_AS(read_png(scratch("nope.png")), Error);
}

TEST_CASE("landmark sets") {
  CHECK_THROWS_AS(LandmarkSet(std::vector<Point2>(67), "dlib68"), Error);
  CHECK_THROWS_AS(LandmarkSet({{0, NAN}}, "free"), Error);
  const LandmarkSet a({{0, 0}, {2, 4}}, "pair"), b({{2, 2}, {4, 0}}, "pair");
  const auto mid = interpolate(a, b, 0.25);
  CHECK(mid[0] == Point2{1.5, 1.5});
  CHECK(mid[1] == Point2{3.5, 1.0});
  CHECK_THROWS_AS(interpolate(a, LandmarkSet({{0, 0}}, "pair"), 0.5), Error);

  const LandmarkSet odd({{0.1, 1.0 / 3.0}, {1e-17, 12345.678}}, "free");
  CHECK(parse_landmarks(format_landmarks(odd)) == odd);
  const auto path = scratch("lm.txt");
  write_landmarks(odd, path);
  CHECK(read_landmarks(path) == odd);

  try {
    parse_landmarks("scheme=free\n1 2\n3\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_landmarks("1 2\n"), ParseError);
}

TEST_CASE("embedding vectors") {
  CHECK_THROWS_AS(EmbeddingVector(std::vector<double>{}), Error);
  CHECK_THROWS_AS(EmbeddingVector({1.0, NAN}), Error);
  const EmbeddingVector v({3, 4});
  CHECK(v.norm() == 5.0);
  CHECK(v.normalized().norm() == doctest::Approx(1.0));
  CHECK(cosine_similarity(v, EmbeddingVector({6, 8})) == doctest::Approx(1.0));
  CHECK(cosine_similarity(v, EmbeddingVector({-4, 3})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(cosine_similarity(v, EmbeddingVector({1, 2, 3})), Error);
}

TEST_CASE("score sets") {
  ScoreSet s;
  s.negative = {0.1};
  CHECK_THROWS_AS(s.validate(), Error);
  s.positive = {NAN};
  CHECK_THROWS_AS(s.validate(), Error);
  const auto mixed = std::vector<LabeledScore>{{0.1, ScoreLabel::BonaFide}, {0.2, ScoreLabel::Genuine}};
  CHECK_THROWS_AS(ScoreSet::from_labeled(mixed), Error);
  const auto det = ScoreSet::from_labeled({{0.1, ScoreLabel::BonaFide}, {0.9, ScoreLabel::Attack}});
  CHECK(det.bona_fide() == std::vector<double>{0.1});
  CHECK(det.attack() == std::vector<double>{0.9});

  const auto path = scratch("scores.csv");
  {
    std::ofstream out(path);
    out << "# run_record=abc\nid,score,label\nx,0.25,bona-fide\ny,0.75,attack\n";
  }
  const auto rows = read_score_csv(path);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].label == ScoreLabel::Attack);
  CHECK(rows[1].score == 0.75);
  {
    std::ofstream out(path);
    out << "score,label\n0.25,bona-fide\nabc,attack\n";
  }
  try {
    read_score_csv(path);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("manifest validation") {
  using madkit_test::image;
  auto m = madkit_test::two_subject_manifest();
  CHECK(validate_manifest(m).empty());
  CHECK(validate_manifest(m) == validate_manifest(m));

  SUBCASE("sex mismatch") {
    m.subjects[1].sex = Sex::Female;
    const auto v = validate_manifest(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "pair sex mismatch");
    CHECK(v[0].id == "M_AB");
  }
  SUBCASE("input reuse") {
    m.subjects.push_back(madkit_test::subject("C", Sex::Male, {image("C_mi", ImageRole::MorphInput)}));
    MorphPair again;
    again.id = "M_AC";
    again.image_a = "A_mi";
    again.image_b = "C_mi";
    m.morph_pairs.push_back(again);
    const auto v = validate_manifest(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "input reuse");
    CHECK(v[0].detail == "A_mi");
  }
  SUBCASE("other rules") {
    m.subjects[0].images[1].glasses = true;
    m.subjects[1].images[1].glasses = true;
    m.morph_pairs[0].alpha = 1.0;
    m.subjects[1].images.push_back(image("A_ref", ImageRole::Probe));
    std::set<std::string> rules;
    for (const auto& v : validate_manifest(m)) rules.insert(v.rule);
    CHECK(rules == std::set<std::string>{"pair both glasses", "alpha out of range", "role overlap"});
  }
  SUBCASE("unknown references") {
    m.morph_pairs[0].image_b = "ghost";
    m.morph_pairs[0].attacker = "Z";
    const auto v = validate_manifest(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "unknown image id");
  }
}

TEST_CASE("manifest json round trip and errors") {
  auto m = madkit_test::two_subject_manifest();
  m.subjects[0].images[0].post_processing = PostProcessing::PSJP2;
  m.morph_pairs[0].attacker = "B";
  m.morph_pairs[0].alpha = 0.25;
  const auto text = format_manifest(m);
  const auto back = parse_manifest(text);
  CHECK(format_manifest(back) == text);
  CHECK(back.morph_pairs[0].attacker == std::optional<std::string>("B"));
  CHECK(back.find_image("A_ref")->post_processing == PostProcessing::PSJP2);
  CHECK(back.owner_of("B_probe")->id == "B");
  CHECK(back.find_morph("M_AB")->alpha == 0.25);

  try {
    parse_manifest("{\n  \"subjects\": [\n    {\"id\": \"A\",, }\n  ]\n}\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_manifest(R"({"subjects": [{"id": "A", "sex": "male", "images": [{"id": "x", "role": "witness"}]}]})");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "subjects[0].images[0].role");
  }
  CHECK_THROWS_AS(parse_manifest(R"({"subjects": [{"sex": "male"}]})"), ParseError);
  CHECK_THROWS_AS(read_manifest(scratch("missing.json")), Error);
}
