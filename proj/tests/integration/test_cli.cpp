#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "madkit/classify/model.hpp"
#include "madkit/features/difference.hpp"
#include "madkit/features/synthetic_embeddings.hpp"
#include "madkit/metrics/detection.hpp"
#include "madkit/protocol/comparisons.hpp"
#include "madkit/protocol/synthetic_dataset.hpp"
#include "madkit/rng.hpp"
#include "madkit_cli/cli.hpp"
#include "support/property.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation madkit_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = madkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : root_(fs::temp_directory_path() / ("madkit-it-" + name + "-" + std::to_string(::getpid()))) {
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  std::string operator/(const std::string& rel) const { return (root_ / rel).string(); }

 private:
  fs::path root_;
};

void require_ok(const Invocation& r) {
  INFO(r.err);
  REQUIRE(r.code == madkit::cli::kOk);
}

std::string record_hash(const std::string& dir) {
  return json::parse(slurp(fs::path(dir) / "run_record.json")).at("hash").get<std::string>();
}

// Default synthetic split: disjoint train and test subjects, σ=0.05, α=0.5.
void synthetic_experiment(const Scratch& s, const std::string& tag, unsigned jobs) {
  const std::string j = std::to_string(jobs);
  require_ok(madkit_run({"--out", s / (tag + "/train"), "--seed", "11", "synth", "--subjects", "60",
                         "--manifest-id", "train", "--subject-prefix", "tr", "--dim", "64"}));
  require_ok(madkit_run({"--out", s / (tag + "/test"), "--seed", "12", "synth", "--subjects", "30",
                         "--manifest-id", "test", "--subject-prefix", "te", "--dim", "64"}));
  require_ok(madkit_run({"--out", s / (tag + "/model"), "--seed", "11", "train", "--manifest",
                         s / (tag + "/train/manifest.json"), "--embeddings", s / (tag + "/train/embeddings.txt"),
                         "--test-manifest", s / (tag + "/test/manifest.json")}));
  require_ok(madkit_run({"--out", s / (tag + "/scores"), "--jobs", j, "score", "--model",
                         s / (tag + "/model/model.json"), "--manifest", s / (tag + "/test/manifest.json"),
                         "--embeddings", s / (tag + "/test/embeddings.txt")}));
  require_ok(madkit_run({"--out", s / (tag + "/eval"), "eval", "--scores", s / (tag + "/scores/scores.csv")}));
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(madkit_run({"--help"}).code == 0);
  CHECK(madkit_run({"--out", "x", "train", "--help"}).code == 0);
  CHECK(madkit_run({"--out", "x", "frobnicate"}).code == madkit::cli::kUsage);
  CHECK(madkit_run({"synth"}).code == madkit::cli::kUsage);
}

TEST_CASE("exit codes follow the error class") {
  using madkit::ErrorCode;
  CHECK(madkit::cli::exit_code(ErrorCode::EmptyClass) == 6);
  CHECK(madkit::cli::exit_code(ErrorCode::Validation) == 5);
  CHECK(madkit::cli::exit_code(ErrorCode::Unreachable) == 10);
  CHECK(madkit::cli::exit_code(ErrorCode::CorruptModel) == 9);
}

TEST_CASE("synthetic pipeline is reproducible byte for byte") {
  Scratch s("determinism");
  synthetic_experiment(s, "a", 1);
  synthetic_experiment(s, "b", 3);
  for (const char* f : {"eval/report.json", "eval/det.csv", "eval/densities.csv", "scores/scores.csv",
                        "model/model.json", "train/embeddings.txt", "train/manifest.json"}) {
    INFO(f);
    CHECK(slurp(s / (std::string("a/") + f)) == slurp(s / (std::string("b/") + f)));
  }
  for (const char* d : {"train", "test", "model", "scores", "eval"}) {
    CHECK(record_hash(s / (std::string("a/") + d)) == record_hash(s / (std::string("b/") + d)));
  }
}

TEST_CASE("every output file carries the run record hash") {
  Scratch s("embed");
  synthetic_experiment(s, "r", 1);
  for (const char* d : {"train", "model", "scores", "eval"}) {
    const std::string dir = s / (std::string("r/") + d);
    const std::string hash = record_hash(dir);
    for (const auto& e : fs::directory_iterator(dir)) {
      INFO(e.path().string());
      CHECK(slurp(e.path()).find(hash) != std::string::npos);
    }
  }
}

TEST_CASE("CLI D-EER equals the library computation") {
  Scratch s("equiv");
  require_ok(madkit_run({"--out", s / "train", "--seed", "21", "synth", "--subjects", "40", "--manifest-id", "train",
                         "--subject-prefix", "tr", "--dim", "32"}));
  require_ok(madkit_run({"--out", s / "test", "--seed", "22", "synth", "--subjects", "20", "--manifest-id", "test",
                         "--subject-prefix", "te", "--dim", "32"}));
  require_ok(madkit_run({"--out", s / "ptrain", "protocol", "--manifest", s / "train/manifest.json"}));
  require_ok(madkit_run({"--out", s / "ftrain", "--seed", "21", "features", "--kind", "synthetic", "--dim", "32",
                         "--manifest", s / "ptrain/manifest.json"}));
  require_ok(madkit_run({"--out", s / "ftest", "--seed", "22", "features", "--kind", "synthetic", "--dim", "32",
                         "--manifest", s / "test/manifest.json"}));
  require_ok(madkit_run({"--out", s / "model", "--seed", "21", "train", "--manifest", s / "ptrain/manifest.json",
                         "--embeddings", s / "ftrain/embeddings.txt", "--C", "2"}));
  require_ok(madkit_run({"--out", s / "scores", "score", "--model", s / "model/model.json", "--manifest",
                         s / "test/manifest.json", "--embeddings", s / "ftest/embeddings.txt"}));
  require_ok(madkit_run({"--out", s / "eval", "eval", "--scores", s / "scores/scores.csv"}));
  const double cli_deer = json::parse(slurp(s / "eval/report.json")).at("deer").at("rate").get<double>();

  using madkit::derive_seed;
  auto make = [](std::uint64_t seed, const std::string& id, const std::string& prefix) {
    madkit::protocol::SyntheticDatasetConfig cfg;
    cfg.subjects = id == "train" ? 40 : 20;
    cfg.manifest_id = id;
    cfg.subject_prefix = prefix;
    cfg.seed = derive_seed(seed, "manifest");
    return madkit::protocol::synthetic_manifest(cfg);
  };
  auto embed = [](std::uint64_t seed, const madkit::DatasetManifest& m) {
    madkit::features::SyntheticConfig cfg;
    cfg.dim = 32;
    cfg.seed = derive_seed(seed, "embeddings");
    return madkit::features::synthesize_embeddings(cfg, m);
  };
  auto rows_of = [](const madkit::DatasetManifest& m, const madkit::features::EmbeddingStore& e,
                    std::vector<int>& labels) {
    const auto set = madkit::protocol::enumerate_comparisons(m);
    std::vector<std::vector<double>> rows;
    for (const auto* group : {&set.genuine, &set.attacks}) {
      for (const auto& c : *group) {
        rows.push_back(madkit::features::combine_difference(e.at(c.reference_id).values(), e.at(c.probe_id).values()));
        labels.push_back(group == &set.genuine ? madkit::classify::kBonaFide : madkit::classify::kAttack);
      }
    }
    return rows;
  };
  const auto train_m = make(21, "train", "tr");
  const auto test_m = make(22, "test", "te");
  std::vector<int> train_labels, test_labels;
  const auto train_rows = rows_of(train_m, embed(21, train_m), train_labels);
  const auto test_rows = rows_of(test_m, embed(22, test_m), test_labels);
  madkit::classify::TrainOptions opts;
  opts.svm.C = 2;
  opts.svm.seed = derive_seed(21, "svm");
  const auto model = madkit::classify::train(train_rows, train_labels, opts).model;
  madkit::ScoreSet set;
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    (test_labels[i] == madkit::classify::kAttack ? set.positive : set.negative).push_back(model.score(test_rows[i]));
  }
  CHECK(madkit::metrics::deer(set).rate == cli_deer);
}

TEST_CASE("eval with an empty attack file reports an empty class") {
  Scratch s("empty");
  std::ofstream(s / "bf.csv") << "score,label\n0.1,bona-fide\n0.4,bona-fide\n";
  std::ofstream(s / "at.csv") << "score,label\n";
  const auto r = madkit_run({"--out", s / "eval", "eval", "--scores", s / "bf.csv", s / "at.csv"});
  CHECK(r.code == madkit::cli::kEmptyClass);
  CHECK(r.err.find("attack") != std::string::npos);
  CHECK_FALSE(fs::exists(s / "eval/report.json"));
}

TEST_CASE("failed commands leave no partial outputs") {
  Scratch s("partial");
  madkit::Rng rng(3);
  fs::create_directories(s / "img");
  for (int i = 0; i < 3; ++i) {
    madkit::write_png(madkit_test::random_image(rng, 128, 96, 1), s / ("img/i" + std::to_string(i) + ".png"));
  }
  const auto r = madkit_run({"--out", s / "out", "degrade", "--images", s / "img", "--mode", "jp2", "--target-bytes", "8"});
  CHECK(r.code == madkit::cli::kUnreachable);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(s / "out")) files += e.is_regular_file();
  CHECK(files == 0);
  CHECK(fs::is_empty(s / "out"));
}

TEST_CASE("train refuses overlapping manifests unless overridden") {
  Scratch s("overlap");
  require_ok(madkit_run({"--out", s / "d", "synth", "--subjects", "8", "--dim", "8"}));
  const std::vector<std::string> base = {"--out", s / "m", "train", "--manifest", s / "d/manifest.json",
                                         "--embeddings", s / "d/embeddings.txt", "--test-manifest",
                                         s / "d/manifest.json"};
  CHECK(madkit_run(base).code == madkit::cli::kValidation);
  auto allowed = base;
  allowed.push_back("--allow-overlap");
  require_ok(madkit_run(allowed));
  const auto scored = madkit_run({"--out", s / "sc", "score", "--model", s / "m/model.json", "--manifest",
                                  s / "d/manifest.json", "--embeddings", s / "d/embeddings.txt"});
  CHECK(scored.code == madkit::cli::kValidation);
}

TEST_CASE("config file values override command-line flags") {
  Scratch s("config");
  std::ofstream(s / "cfg.json") << R"({"subjects": 5, "seed": 4, "dim": 8})";
  require_ok(madkit_run({"--out", s / "a", "--seed", "1", "--config", s / "cfg.json", "synth", "--subjects", "2", "--dim", "16"}));
  const auto rec = json::parse(slurp(s / "a/run_record.json"));
  CHECK(rec.at("seed") == 4);
  CHECK(rec.at("parameters").at("dataset").at("subjects") == 5);
  CHECK(rec.at("parameters").at("embeddings").at("dim") == 8);
  std::ofstream(s / "bad.json") << "[1, 2";
  CHECK(madkit_run({"--out", s / "b", "--config", s / "bad.json", "synth"}).code == madkit::cli::kParse);
}
