#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>

#include "commands.hpp"
#include "madkit/classify/model.hpp"
#include "madkit/error.hpp"
#include "madkit/metrics/curves.hpp"
#include "madkit/metrics/detection.hpp"
#include "madkit/metrics/mds.hpp"
#include "madkit/metrics/vulnerability.hpp"
#include "madkit/parallel.hpp"
#include "madkit/rng.hpp"
#include "madkit/scores.hpp"
#include "pipeline.hpp"

namespace madkit::cli {

namespace {

protocol::AttackConvention convention(bool attacker_only) {
  return attacker_only ? protocol::AttackConvention::AttackerOnly : protocol::AttackConvention::BothContributors;
}

void require_separation(const std::string& train_id, const std::vector<std::string>& train_subjects,
                        const DatasetManifest& test, bool allow_overlap) {
  if (allow_overlap) return;
  if (train_id == test.id) {
    throw Error(ErrorCode::Validation,
                "training and test manifests share the id '" + test.id + "' (pass --allow-overlap to override)");
  }
  const auto shared = shared_ids(train_subjects, subject_ids(test));
  if (!shared.empty()) {
    throw Error(ErrorCode::Validation, std::to_string(shared.size()) + " subject(s) appear in both training and test data, e.g. '" +
                                           shared.front() + "' (pass --allow-overlap to override)");
  }
}

json point(const metrics::OperatingPoint& p) { return {{"rate", p.rate}, {"threshold", p.threshold}}; }

}  // namespace

void add_train(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest, embeddings, test_manifest;
    bool allow_overlap = false;
    bool attacker_only = false;
    bool standardize = false;
    double calibration_split = 0.0;
    double gamma = 0.0;
    classify::SvmParams svm;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("train", "Train the RBF-SVM detector on embedding differences");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--embeddings", o->embeddings)->required()->check(CLI::ExistingFile);
  cmd->add_option("--test-manifest", o->test_manifest, "Refuse to train if it overlaps the training manifest")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--allow-overlap", o->allow_overlap, "Permit shared manifest ids or subjects");
  cmd->add_flag("--attacker-only", o->attacker_only, "Attack rows use the attacker's probes only");
  cmd->add_option("--C", o->svm.C, "Soft-margin penalty")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--gamma", o->gamma, "RBF width; 0 selects 1/(dim*var)")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--tolerance", o->svm.tolerance)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--max-iterations", o->svm.max_iterations)->capture_default_str();
  cmd->add_option("--cache-mb", o->svm.cache_megabytes)->capture_default_str();
  cmd->add_flag("--standardize", o->standardize, "Standardize features before training");
  cmd->add_option("--calibration-split", o->calibration_split, "Share of rows held out for calibration")
      ->check(CLI::Range(0.0, 0.9))
      ->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    const DatasetManifest m = load_valid_manifest(o->manifest);
    if (!o->test_manifest.empty()) {
      require_separation(m.id, subject_ids(m), load_valid_manifest(o->test_manifest), o->allow_overlap);
    }
    const auto store = features::load_embeddings(o->embeddings);

    RunRecord rec("train", common.seed);
    rec.input("manifest", o->manifest);
    rec.input("embeddings", o->embeddings);
    if (!o->test_manifest.empty()) rec.input("test_manifest", o->test_manifest);
    rec.param("C", o->svm.C);
    rec.param("gamma", o->gamma);
    rec.param("tolerance", o->svm.tolerance);
    rec.param("max_iterations", o->svm.max_iterations);
    rec.param("standardize", o->standardize);
    rec.param("calibration_split", o->calibration_split);
    rec.param("attacker_only", o->attacker_only);
    rec.param("allow_overlap", o->allow_overlap);
    const std::string hash = rec.hash();

    auto tf = difference_features(m, store, convention(o->attacker_only));
    classify::TrainOptions options;
    options.svm = o->svm;
    options.svm.seed = derive_seed(common.seed, "svm");
    if (o->gamma > 0.0) options.svm.gamma = o->gamma;
    options.standardize = o->standardize;

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    if (o->calibration_split > 0.0) {
      std::vector<std::size_t> order(tf.rows.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng(derive_seed(common.seed, "calibration"));
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      const auto held = static_cast<std::size_t>(o->calibration_split * static_cast<double>(order.size()));
      std::vector<std::size_t> cal(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(held));
      std::vector<std::size_t> fit(order.begin() + static_cast<std::ptrdiff_t>(held), order.end());
      std::sort(cal.begin(), cal.end());
      std::sort(fit.begin(), fit.end());
      options.calibration_rows.emplace();
      options.calibration_labels.emplace();
      for (auto i : cal) {
        options.calibration_rows->push_back(tf.rows[i]);
        options.calibration_labels->push_back(tf.labels[i]);
      }
      for (auto i : fit) {
        rows.push_back(std::move(tf.rows[i]));
        labels.push_back(tf.labels[i]);
      }
    } else {
      rows = std::move(tf.rows);
      labels = std::move(tf.labels);
    }

    classify::ModelMetadata meta;
    meta.extractor = store.extractor();
    meta.train_manifest_id = m.id;
    meta.train_subjects = subject_ids(m);
    meta.extra["run_record"] = hash;
    const auto result = classify::train(rows, labels, options, meta);
    const auto kkt = classify::check_kkt(result.solver_rows, labels, result.solution);

    std::size_t attacks = 0;
    for (int l : labels) attacks += l == classify::kAttack;
    OutputStage stage(common.out);
    stage.write_text("model.json", classify::format_model(result.model));
    json summary = {{"run_record", hash},
                    {"rows", labels.size()},
                    {"attack_rows", attacks},
                    {"bona_fide_rows", labels.size() - attacks},
                    {"support_vectors", result.model.support_vectors.size()},
                    {"gamma", result.model.gamma},
                    {"iterations", result.solution.iterations},
                    {"converged", result.solution.converged},
                    {"kkt_max_violation", kkt.max_violation},
                    {"kkt_equality_residual", kkt.equality_residual}};
    stage.write_text("train.json", summary.dump(1) + "\n");
    io.out << "train: " << labels.size() << " rows, " << result.model.support_vectors.size() << " support vectors, "
           << result.solution.iterations << " iterations\n";
    finish(stage, rec, io);
  });
}

void add_score(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string model, manifest, embeddings;
    bool allow_overlap = false;
    bool attacker_only = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("score", "Score every genuine and attack trial of a test manifest");
  cmd->add_option("--model", o->model)->required()->check(CLI::ExistingFile);
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--embeddings", o->embeddings)->required()->check(CLI::ExistingFile);
  cmd->add_flag("--allow-overlap", o->allow_overlap, "Permit test subjects seen during training");
  cmd->add_flag("--attacker-only", o->attacker_only, "Attack trials use the attacker's probes only");

  common.on_run(cmd, [o, &common, io] {
    const auto model = classify::load_model(o->model);
    const DatasetManifest m = load_valid_manifest(o->manifest);
    require_separation(model.metadata.train_manifest_id, model.metadata.train_subjects, m, o->allow_overlap);
    const auto store = features::load_embeddings(o->embeddings);
    if (!model.metadata.extractor.empty() && model.metadata.extractor != store.extractor()) {
      throw Error(ErrorCode::InvalidArgument, "model was trained on '" + model.metadata.extractor +
                                                  "' features but the embeddings come from '" + store.extractor() + "'");
    }

    RunRecord rec("score", common.seed);
    rec.input("model", o->model);
    rec.input("manifest", o->manifest);
    rec.input("embeddings", o->embeddings);
    rec.param("attacker_only", o->attacker_only);
    rec.param("allow_overlap", o->allow_overlap);
    const std::string hash = rec.hash();

    const auto tf = difference_features(m, store, convention(o->attacker_only));
    std::vector<double> decision(tf.rows.size()), score(tf.rows.size());
    parallel_for(tf.rows.size(), common.jobs, [&](std::size_t i) {
      decision[i] = model.decision(tf.rows[i]);
      score[i] = model.score(tf.rows[i]);
    });

    std::ostringstream csv;
    csv << "# " << record_comment(hash) << "\n";
    csv << "score,label,kind,ref_id,probe_id,subject_id,decision\n";
    for (std::size_t i = 0; i < tf.rows.size(); ++i) {
      const auto& t = tf.trials[i];
      csv << format_double(score[i]) << ','
          << to_string(tf.labels[i] == classify::kAttack ? ScoreLabel::Attack : ScoreLabel::BonaFide) << ','
          << protocol::to_string(t.kind) << ',' << t.reference_id << ',' << t.probe_id << ',' << t.subject_id << ','
          << format_double(decision[i]) << "\n";
    }
    OutputStage stage(common.out);
    stage.write_text("scores.csv", csv.str());
    io.out << "score: " << tf.rows.size() << " trials\n";
    finish(stage, rec, io);
  });
}

void add_eval(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::vector<std::string> scores;
    int bins = 50;
    int grid = 2048;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("eval", "Detection metrics, DET series and score densities");
  cmd->add_option("--scores", o->scores, "Score CSV files (score,label,...), concatenated")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--bins", o->bins)->check(CLI::Range(1, 100000))->capture_default_str();
  cmd->add_option("--grid", o->grid)->check(CLI::Range(2, 1000000))->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    std::vector<LabeledScore> all;
    for (const auto& f : o->scores) {
      const auto part = read_score_csv(f);
      all.insert(all.end(), part.begin(), part.end());
    }
    const ScoreSet set = ScoreSet::from_labeled(all);
    set.validate();
    const bool detection = set.orientation == ScoreOrientation::HigherIsAttack;

    RunRecord rec("eval", common.seed);
    rec.inputs("scores", as_paths(o->scores));
    rec.param("bins", o->bins);
    rec.param("grid", o->grid);
    const std::string hash = rec.hash();

    const auto eer = metrics::deer(set);
    const auto curve = metrics::det_curve(set);
    json report = {{"run_record", hash},
                   {"orientation", detection ? "higher-is-attack" : "higher-is-match"},
                   {"negative", set.negative.size()},
                   {"positive", set.positive.size()},
                   {detection ? "deer" : "eer", point(eer)},
                   {"det_area", metrics::det_area(curve)}};
    if (detection) {
      report["bpcer10"] = point(metrics::bpcer_at_apcer(set, 0.10));
      report["bpcer20"] = point(metrics::bpcer_at_apcer(set, 0.05));
    }
    const auto densities = metrics::score_histograms(set, o->bins, o->grid);
    const std::string comment = "# " + record_comment(hash) + "\n";

    OutputStage stage(common.out);
    stage.write_text("report.json", report.dump(1) + "\n");
    stage.write_text("det.csv", comment + metrics::format_det_csv(curve));
    stage.write_text("densities.csv", comment + metrics::format_densities_csv(densities, detection ? "bona-fide" : "impostor",
                                                                              detection ? "attack" : "genuine"));
    io.out << "eval: " << (detection ? "D-EER " : "EER ") << eer.rate << " at threshold " << eer.threshold << "\n";
    finish(stage, rec, io);
  });
}

void add_vuln(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest, embeddings;
    double target_fmr = 0.001;
    bool attacker_only = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("vuln", "Face recognition vulnerability: FMR, FNMR, MMPMR and RMMR");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--embeddings", o->embeddings)->required()->check(CLI::ExistingFile);
  cmd->add_option("--target-fmr", o->target_fmr)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_flag("--attacker-only", o->attacker_only, "Morphs are compared to the attacker's probes only");

  common.on_run(cmd, [o, &common, io] {
    const DatasetManifest m = load_valid_manifest(o->manifest);
    const auto store = features::load_embeddings(o->embeddings);
    RunRecord rec("vuln", common.seed);
    rec.input("manifest", o->manifest);
    rec.input("embeddings", o->embeddings);
    rec.param("target_fmr", o->target_fmr);
    rec.param("attacker_only", o->attacker_only);
    const std::string hash = rec.hash();

    const auto sims = similarity_scores(m, store, convention(o->attacker_only));
    if (sims.genuine.empty() || sims.impostor.empty()) {
      throw Error(ErrorCode::EmptyClass, "vulnerability analysis needs genuine and impostor comparisons");
    }
    const auto rep = metrics::vulnerability_report(sims.genuine, sims.impostor, sims.morphs, o->target_fmr);

    // Acceptance split by the probe subject's role in the morph.
    std::size_t att_n = 0, att_ok = 0, acc_n = 0, acc_ok = 0;
    for (const auto& [c, s] : sims.all) {
      if (c.kind != protocol::ComparisonKind::Attack) continue;
      const auto* pair = m.find_morph(c.reference_id);
      const bool attacker = protocol::morph_contributors(m, *pair).first == c.subject_id;
      (attacker ? att_n : acc_n)++;
      if (s >= rep.threshold) (attacker ? att_ok : acc_ok)++;
    }
    auto rate = [](std::size_t k, std::size_t n) { return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n); };

    json report = {{"run_record", hash},
                   {"target_fmr", o->target_fmr},
                   {"threshold", rep.threshold},
                   {"fmr", rep.fmr},
                   {"fnmr", rep.fnmr},
                   {"mmpmr", rep.morphs.mmpmr},
                   {"rmmr", rep.rmmr},
                   {"comparison_rate", rep.morphs.comparison_rate},
                   {"morphs_accepted", rep.morphs.morphs_accepted},
                   {"morphs_total", rep.morphs.morphs_total},
                   {"attacker_acceptance", rate(att_ok, att_n)},
                   {"accomplice_acceptance", rate(acc_ok, acc_n)},
                   {"genuine", sims.genuine.size()},
                   {"impostor", sims.impostor.size()},
                   {"attack_comparisons", att_n + acc_n}};

    std::ostringstream csv;
    csv << "# " << record_comment(hash) << "\n";
    csv << "score,label,kind,ref_id,probe_id,subject_id\n";
    for (const auto& [c, s] : sims.all) {
      const char* label = c.kind == protocol::ComparisonKind::Genuine    ? "genuine"
                          : c.kind == protocol::ComparisonKind::Impostor ? "impostor"
                                                                         : "attack";
      csv << format_double(s) << ',' << label << ',' << protocol::to_string(c.kind) << ',' << c.reference_id << ','
          << c.probe_id << ',' << c.subject_id << "\n";
    }
    OutputStage stage(common.out);
    stage.write_text("vuln.json", report.dump(1) + "\n");
    stage.write_text("similarity.csv", csv.str());
    io.out << "vuln: threshold " << rep.threshold << ", MMPMR " << rep.morphs.mmpmr << ", RMMR " << rep.rmmr << "\n";
    finish(stage, rec, io);
  });
}

void add_mds(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest, embeddings;
    std::size_t max_rows = 1000;
    std::size_t dims = 2;
    bool attacker_only = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("mds", "Classical MDS of embedding difference vectors");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--embeddings", o->embeddings)->required()->check(CLI::ExistingFile);
  cmd->add_option("--max-rows", o->max_rows, "Seeded subsample size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--dims", o->dims)->check(CLI::Range(1, 10))->capture_default_str();
  cmd->add_flag("--attacker-only", o->attacker_only);

  common.on_run(cmd, [o, &common, io] {
    const DatasetManifest m = load_valid_manifest(o->manifest);
    const auto store = features::load_embeddings(o->embeddings);
    RunRecord rec("mds", common.seed);
    rec.input("manifest", o->manifest);
    rec.input("embeddings", o->embeddings);
    rec.param("max_rows", o->max_rows);
    rec.param("dims", o->dims);
    rec.param("attacker_only", o->attacker_only);
    const std::string hash = rec.hash();

    const auto tf = difference_features(m, store, convention(o->attacker_only));
    std::vector<std::size_t> keep(tf.rows.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    if (keep.size() > o->max_rows) {
      Rng rng(derive_seed(common.seed, "mds"));
      for (std::size_t i = 0; i < o->max_rows; ++i) std::swap(keep[i], keep[i + rng.below(keep.size() - i)]);
      keep.resize(o->max_rows);
      std::sort(keep.begin(), keep.end());
    }
    std::vector<std::vector<double>> rows;
    for (auto i : keep) rows.push_back(tf.rows[i]);
    const auto res = metrics::classical_mds(rows, o->dims);

    std::ostringstream csv;
    csv << "# " << record_comment(hash) << "\n";
    csv << "label,kind,ref_id,probe_id";
    for (std::size_t d = 0; d < o->dims; ++d) csv << ",x" << d + 1;
    csv << "\n";
    for (std::size_t r = 0; r < keep.size(); ++r) {
      const auto& t = tf.trials[keep[r]];
      csv << to_string(tf.labels[keep[r]] == classify::kAttack ? ScoreLabel::Attack : ScoreLabel::BonaFide) << ','
          << protocol::to_string(t.kind) << ',' << t.reference_id << ',' << t.probe_id;
      for (double v : res.coordinates[r]) csv << ',' << format_double(v);
      csv << "\n";
    }
    json summary = {{"run_record", hash}, {"rows", keep.size()}, {"eigenvalues", res.eigenvalues},
                    {"rank_deficient", res.rank_deficient}};
    OutputStage stage(common.out);
    stage.write_text("mds.csv", csv.str());
    stage.write_text("mds.json", summary.dump(1) + "\n");
    io.out << "mds: " << keep.size() << " rows\n";
    finish(stage, rec, io);
  });
}

}  // namespace madkit::cli
