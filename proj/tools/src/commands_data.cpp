#include <algorithm>
#include <fstream>
#include <map>
#include <memory>

#include "commands.hpp"
#include "madkit/degrade/codec.hpp"
#include "madkit/degrade/print_scan.hpp"
#include "madkit/error.hpp"
#include "madkit/features/synthetic_embeddings.hpp"
#include "madkit/features/texture.hpp"
#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"
#include "madkit/morph/morph.hpp"
#include "madkit/morph/regions.hpp"
#include "madkit/parallel.hpp"
#include "madkit/protocol/comparisons.hpp"
#include "madkit/protocol/pairing.hpp"
#include "madkit/protocol/synthetic_dataset.hpp"
#include "madkit/rng.hpp"
#include "madkit/synthetic/faces.hpp"
#include "pipeline.hpp"

namespace madkit::cli {

namespace fs = std::filesystem;

namespace {

std::string manifest_text(const DatasetManifest& m, const std::string& hash) {
  json doc = json::parse(format_manifest(m));
  doc["run_record"] = hash;
  return doc.dump(1) + "\n";
}

json manifest_params(const protocol::SyntheticDatasetConfig& c) {
  return {{"manifest_id", c.manifest_id}, {"subject_prefix", c.subject_prefix}, {"subjects", c.subjects},
          {"references", c.references},   {"morph_inputs", c.morph_inputs},     {"probes", c.probes},
          {"female_fraction", c.female_fraction}, {"glasses", c.glasses_probability}, {"alpha", c.alpha},
          {"tool", c.tool}};
}

LandmarkSet strip_border(const LandmarkSet& lm) {
  if (!lm.is_augmented()) return lm;
  std::vector<Point2> pts(lm.points().begin(), lm.points().end() - schemes::kBorderCount);
  return LandmarkSet(std::move(pts), lm.base_scheme());
}

// Every image id (manifest images then morph ids) with the role it plays.
std::vector<std::pair<std::string, bool>> all_ids(const DatasetManifest& m) {
  std::vector<std::pair<std::string, bool>> ids;
  for (const auto& s : m.subjects)
    for (const auto& img : s.images) ids.emplace_back(img.id, img.role == ImageRole::BonaFideReference);
  for (const auto& p : m.morph_pairs) ids.emplace_back(p.id, true);
  return ids;
}

}  // namespace

void add_synth(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    protocol::SyntheticDatasetConfig data;
    features::SyntheticConfig emb;
    bool images = false;
    bool grayscale = false;
    int width = 360;
    int height = 480;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("synth", "Generate a synthetic manifest and embeddings, optionally face images");
  cmd->add_option("--subjects", o->data.subjects)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--references", o->data.references, "Reference images per subject")->capture_default_str();
  cmd->add_option("--morph-inputs", o->data.morph_inputs, "Morph-input images per subject")->capture_default_str();
  cmd->add_option("--probes", o->data.probes, "Probe images per subject")->capture_default_str();
  cmd->add_option("--female-fraction", o->data.female_fraction)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--glasses", o->data.glasses_probability, "Probability an image shows glasses")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--alpha", o->data.alpha, "Morph weight of the attacker")->capture_default_str();
  cmd->add_option("--tool", o->data.tool)->capture_default_str();
  cmd->add_option("--manifest-id", o->data.manifest_id)->capture_default_str();
  cmd->add_option("--subject-prefix", o->data.subject_prefix)->capture_default_str();
  cmd->add_option("--dim", o->emb.dim, "Embedding dimension")->capture_default_str();
  cmd->add_option("--sigma", o->emb.sigma, "Per-sample embedding noise")->capture_default_str();
  cmd->add_option("--morph-alpha", o->emb.morph_alpha, "Override every morph weight when in (0, 1)")
      ->capture_default_str();
  cmd->add_flag("--images", o->images, "Also render face images and landmarks");
  cmd->add_flag("--grayscale", o->grayscale, "Render grayscale images");
  cmd->add_option("--width", o->width)->check(CLI::Range(64, 8192))->capture_default_str();
  cmd->add_option("--height", o->height)->check(CLI::Range(64, 8192))->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    auto data = o->data;
    auto emb = o->emb;
    data.seed = derive_seed(common.seed, "manifest");
    emb.seed = derive_seed(common.seed, "embeddings");
    emb.validate();

    RunRecord rec("synth", common.seed);
    rec.param("dataset", manifest_params(data));
    rec.param("embeddings", {{"dim", emb.dim}, {"sigma", emb.sigma}, {"morph_alpha", emb.morph_alpha}});
    if (o->images) {
      rec.param("images", {{"width", o->width}, {"height", o->height}, {"grayscale", o->grayscale}});
    }
    const std::string hash = rec.hash();

    const DatasetManifest manifest = protocol::synthetic_manifest(data);
    const auto store = features::synthesize_embeddings(emb, manifest);

    OutputStage stage(common.out);
    stage.write_text("manifest.json", manifest_text(manifest, hash));
    stage.write_text("embeddings.txt", features::format_embeddings(store, {{"run_record", hash}}));

    if (o->images) {
      synthetic::FaceConfig face;
      face.width = o->width;
      face.height = o->height;
      face.inter_eye = 180.0 * o->width / 720.0;
      face.color = !o->grayscale;
      synthetic::SampleVariation variation;
      variation.grayscale = o->grayscale;

      std::vector<synthetic::FaceIdentity> identities(manifest.subjects.size());
      parallel_for(identities.size(), common.jobs, [&](std::size_t i) {
        identities[i] = synthetic::make_identity(derive_seed(common.seed, "face:" + manifest.subjects[i].id), face);
      });
      struct Job {
        std::size_t subject;
        std::string id;
        fs::path image;
        fs::path landmarks;
      };
      std::vector<Job> jobs;
      for (std::size_t s = 0; s < manifest.subjects.size(); ++s) {
        for (const auto& img : manifest.subjects[s].images) {
          jobs.push_back({s, img.id, stage.path("images/" + img.id + ".png"),
                          stage.path("landmarks/" + img.id + ".txt")});
        }
      }
      parallel_for(jobs.size(), common.jobs, [&](std::size_t i) {
        const auto& j = jobs[i];
        const auto sample =
            synthetic::render_sample(identities[j.subject], derive_seed(common.seed, "sample:" + j.id), variation, face);
        write_png(sample.image, j.image);
        write_landmarks(sample.landmarks, j.landmarks);
      });
      json sidecar = {{"run_record", hash}, {"width", face.width}, {"height", face.height},
                      {"images", jobs.size()}};
      stage.write_text("images.json", sidecar.dump(1) + "\n");
    }
    io.out << "synth: " << manifest.subjects.size() << " subjects, " << store.size() << " embeddings, "
           << manifest.morph_pairs.size() << " morph pairs\n";
    finish(stage, rec, io);
  });
}

void add_protocol(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest;
    bool pair = false;
    protocol::PairingOptions pairing;
    bool attacker_only = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("protocol", "Validate a manifest, optionally pair morph inputs, list comparisons");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_flag("--pair", o->pair, "Replace morph pairs by the greedy pairing of the morph inputs");
  cmd->add_option("--alpha", o->pairing.alpha, "Morph weight for generated pairs")->capture_default_str();
  cmd->add_option("--tool", o->pairing.tool)->capture_default_str();
  cmd->add_option("--id-prefix", o->pairing.id_prefix)->capture_default_str();
  cmd->add_flag("--attacker-only", o->attacker_only, "Attack trials use the attacker's probes only");

  common.on_run(cmd, [o, &common, io] {
    RunRecord rec("protocol", common.seed);
    rec.input("manifest", o->manifest);
    rec.param("pair", o->pair);
    if (o->pair) rec.param("pairing", {{"alpha", o->pairing.alpha}, {"tool", o->pairing.tool}, {"id_prefix", o->pairing.id_prefix}});
    rec.param("attacker_only", o->attacker_only);
    const std::string hash = rec.hash();

    DatasetManifest m = read_manifest(o->manifest);
    protocol::PairingResult report;
    if (o->pair) m = protocol::apply_pairing(m, o->pairing, &report);
    const auto violations = validate_manifest(m);
    for (const auto& v : violations) io.err << "violation: " << v.rule << ": " << v.id << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
    if (!violations.empty()) {
      throw Error(ErrorCode::Validation, std::to_string(violations.size()) + " manifest violation(s)");
    }
    const auto convention =
        o->attacker_only ? protocol::AttackConvention::AttackerOnly : protocol::AttackConvention::BothContributors;
    const auto set = protocol::enumerate_comparisons(m, convention);

    OutputStage stage(common.out);
    stage.write_text("manifest.json", manifest_text(m, hash));
    stage.write_text("comparisons.csv", protocol::format_comparisons_csv(set, {record_comment(hash)}));
    json summary = {{"run_record", hash},
                    {"manifest_id", m.id},
                    {"subjects", m.subjects.size()},
                    {"morph_pairs", m.morph_pairs.size()},
                    {"genuine", set.genuine.size()},
                    {"impostor", set.impostor.size()},
                    {"attacks", set.attacks.size()},
                    {"unpaired", report.unpaired}};
    stage.write_text("protocol.json", summary.dump(1) + "\n");
    io.out << "protocol: " << set.genuine.size() << " genuine, " << set.impostor.size() << " impostor, "
           << set.attacks.size() << " attack comparisons\n";
    finish(stage, rec, io);
  });
}

void add_morph(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest;
    std::vector<std::string> images;
    std::vector<std::string> landmarks;
    bool reblend = false;
    double reblend_opacity = 1.0;
    bool background = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("morph", "Generate every morph pair of a manifest");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--images", o->images, "Directories holding <id>.png")->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--landmarks", o->landmarks, "Directories holding <id>.txt (default: --images)")
      ->check(CLI::ExistingDirectory);
  cmd->add_flag("--reblend", o->reblend, "Blend the attacker's eye and nostril regions over the morph");
  cmd->add_option("--reblend-opacity", o->reblend_opacity)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_flag("--background", o->background, "Paste the morphed face onto the attacker's background");

  common.on_run(cmd, [o, &common, io] {
    const DatasetManifest m = load_valid_manifest(o->manifest);
    const auto& lm_dirs = o->landmarks.empty() ? o->images : o->landmarks;
    std::vector<fs::path> inputs;
    for (const auto& p : m.morph_pairs) {
      for (const auto* id : {&p.image_a, &p.image_b}) {
        inputs.push_back(locate(o->images, *id, ".png"));
        inputs.push_back(locate(lm_dirs, *id, ".txt"));
      }
    }
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

    RunRecord rec("morph", common.seed);
    rec.input("manifest", o->manifest);
    rec.inputs("images", inputs);
    rec.param("reblend", o->reblend);
    rec.param("reblend_opacity", o->reblend_opacity);
    rec.param("background", o->background);
    const std::string hash = rec.hash();

    OutputStage stage(common.out);
    const std::size_t n = m.morph_pairs.size();
    std::vector<fs::path> image_out(n), lm_out(n);
    for (std::size_t i = 0; i < n; ++i) {
      image_out[i] = stage.path("images/" + m.morph_pairs[i].id + ".png");
      lm_out[i] = stage.path("landmarks/" + m.morph_pairs[i].id + ".txt");
    }
    std::vector<std::size_t> skipped(n);
    parallel_for(n, common.jobs, [&](std::size_t i) {
      const auto& p = m.morph_pairs[i];
      const RasterImage a = read_png(locate(o->images, p.image_a, ".png"));
      const RasterImage b = read_png(locate(o->images, p.image_b, ".png"));
      if (!a.same_shape(b)) {
        throw Error(ErrorCode::DimensionMismatch, "morph " + p.id + ": input images differ in size");
      }
      const auto lm_a = morph::augment_landmarks(read_landmarks(locate(lm_dirs, p.image_a, ".txt")), a.width(), a.height());
      const auto lm_b = morph::augment_landmarks(read_landmarks(locate(lm_dirs, p.image_b, ".txt")), b.width(), b.height());
      auto result = morph::morph(a, b, lm_a, lm_b, {p.alpha});
      if (o->reblend) result.image = morph::reblend_regions(result.image, result.landmarks, a, lm_a, o->reblend_opacity);
      if (o->background) result.image = morph::replace_background(result.image, result.landmarks, a);
      write_png(result.image, image_out[i]);
      write_landmarks(strip_border(result.landmarks), lm_out[i]);
      skipped[i] = result.skipped_triangles;
    });

    json list = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = m.morph_pairs[i];
      list.push_back({{"id", p.id}, {"a", p.image_a}, {"b", p.image_b}, {"alpha", p.alpha},
                      {"skipped_triangles", skipped[i]}, {"sha256", sha256_file(image_out[i])}});
    }
    stage.write_text("morphs.json", json{{"run_record", hash}, {"morphs", list}}.dump(1) + "\n");
    io.out << "morph: " << n << " morphs\n";
    finish(stage, rec, io);
  });
}

void add_demorph(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string reference, reference_lm, probe, probe_lm;
    double factor = 0.3;
    std::string name = "demorph";
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("demorph", "Subtract a live probe from a suspected morph");
  cmd->add_option("--reference", o->reference, "Suspected reference image (PNG)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--reference-landmarks", o->reference_lm)->required()->check(CLI::ExistingFile);
  cmd->add_option("--probe", o->probe, "Trusted live image (PNG)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--probe-landmarks", o->probe_lm)->required()->check(CLI::ExistingFile);
  cmd->add_option("--factor", o->factor)->check(CLI::Range(0.0, 0.999))->capture_default_str();
  cmd->add_option("--name", o->name, "Output file stem")->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    RunRecord rec("demorph", common.seed);
    rec.input("reference", o->reference);
    rec.input("reference_landmarks", o->reference_lm);
    rec.input("probe", o->probe);
    rec.input("probe_landmarks", o->probe_lm);
    rec.param("factor", o->factor);
    const std::string hash = rec.hash();

    const RasterImage ref = read_png(o->reference);
    const RasterImage probe = read_png(o->probe);
    const auto lm_ref = morph::augment_landmarks(read_landmarks(o->reference_lm), ref.width(), ref.height());
    const auto lm_probe = morph::augment_landmarks(read_landmarks(o->probe_lm), probe.width(), probe.height());
    const auto result = morph::demorph(ref, lm_ref, probe, lm_probe, o->factor);

    OutputStage stage(common.out);
    write_png(result.image, stage.path(o->name + ".png"));
    write_landmarks(strip_border(result.landmarks), stage.path(o->name + ".txt"));
    json sidecar = {{"run_record", hash}, {"factor", o->factor}, {"sha256", sha256_file(stage.path(o->name + ".png"))}};
    stage.write_text(o->name + ".json", sidecar.dump(1) + "\n");
    finish(stage, rec, io);
  });
}

void add_degrade(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string images;
    std::string manifest;
    std::string mode = "psjp2";
    std::string codec = "auto";
    degrade::DegradeConfig config;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("degrade", "Apply a post-processing chain (npp, rs, jp2, psjp2) to images");
  cmd->add_option("--images", o->images, "Directory of <id>.png inputs")->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--manifest", o->manifest, "Only process the manifest's images and morphs")->check(CLI::ExistingFile);
  cmd->add_option("--mode", o->mode)->check(CLI::IsMember({"npp", "rs", "jp2", "psjp2"}))->capture_default_str();
  cmd->add_option("--codec", o->codec, "jpeg2000, jpeg or auto")->capture_default_str();
  cmd->add_option("--target-bytes", o->config.target_bytes)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--texture-amplitude", o->config.texture_amplitude)->capture_default_str();
  cmd->add_option("--texture-cell", o->config.texture_cell)->capture_default_str();
  cmd->add_option("--noise-sigma", o->config.noise_sigma)->capture_default_str();
  cmd->add_option("--median-radius", o->config.median_radius)->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    auto config = o->config;
    config.mode = parse_post_processing(o->mode);
    config.validate();
    const auto codec = degrade::make_codec(o->codec);

    std::vector<std::string> ids;
    if (!o->manifest.empty()) {
      for (const auto& [id, is_ref] : all_ids(load_valid_manifest(o->manifest))) ids.push_back(id);
    } else {
      for (const auto& e : fs::directory_iterator(o->images)) {
        if (e.is_regular_file() && e.path().extension() == ".png") ids.push_back(e.path().stem().string());
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<fs::path> inputs;
    for (const auto& id : ids) inputs.push_back(locate({o->images}, id, ".png"));

    RunRecord rec("degrade", common.seed);
    rec.inputs("images", inputs);
    if (!o->manifest.empty()) rec.input("manifest", o->manifest);
    rec.param("mode", to_string(config.mode));
    rec.param("codec", codec->name());
    rec.param("target_bytes", config.target_bytes);
    rec.param("texture_amplitude", config.texture_amplitude);
    rec.param("texture_cell", config.texture_cell);
    rec.param("noise_sigma", config.noise_sigma);
    rec.param("median_radius", config.median_radius);
    const std::string hash = rec.hash();

    OutputStage stage(common.out);
    const std::string suffix = degrade::suffix_for(config.mode);
    const std::size_t n = ids.size();
    std::vector<fs::path> png_out(n), enc_out(n);
    const bool compressed = config.mode == PostProcessing::JP2 || config.mode == PostProcessing::PSJP2;
    for (std::size_t i = 0; i < n; ++i) {
      png_out[i] = stage.path("images/" + ids[i] + suffix + ".png");
      if (compressed) enc_out[i] = stage.path("encoded/" + ids[i] + suffix + codec->extension());
    }
    std::vector<degrade::DegradeResult> results(n);
    std::vector<std::uint64_t> seeds(n);
    parallel_for(n, common.jobs, [&](std::size_t i) {
      auto cfg = config;
      cfg.seed = seeds[i] = derive_seed(common.seed, ids[i]);
      auto r = degrade::apply_post_processing(read_png(inputs[i]), cfg, *codec);
      write_png(r.image, png_out[i]);
      if (compressed) {
        std::ofstream f(enc_out[i], std::ios::binary);
        f.write(reinterpret_cast<const char*>(r.encoded.data()), static_cast<std::streamsize>(r.encoded.size()));
        if (!f) throw Error(ErrorCode::Io, "cannot write " + enc_out[i].string());
      }
      r.image = RasterImage();
      results[i] = std::move(r);
    });

    json list = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json e = {{"id", ids[i]}, {"output", ids[i] + suffix + ".png"}, {"seed", seeds[i]}};
      if (compressed) {
        e["encoded"] = ids[i] + suffix + codec->extension();
        e["codec"] = results[i].codec;
        e["quality"] = results[i].quality.value_or(0);
        e["bytes"] = results[i].encoded.size();
      }
      list.push_back(std::move(e));
    }
    json sidecar = {{"run_record", hash}, {"mode", to_string(config.mode)}, {"suffix", suffix},
                    {"target_bytes", config.target_bytes}, {"images", list}};
    stage.write_text("degrade.json", sidecar.dump(1) + "\n");
    io.out << "degrade: " << n << " images (" << to_string(config.mode) << ")\n";
    finish(stage, rec, io);
  });
}

void add_features(CLI::App& app, Common& common, Streams io) {
  struct Opts {
    std::string manifest;
    std::string kind = "lbp";
    std::vector<std::string> images;
    std::string bank;
    int bank_count = 8;
    int bank_size = 7;
    std::string reference_suffix;
    features::SyntheticConfig synthetic;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("features", "Extract one feature vector per manifest image and morph");
  cmd->add_option("--manifest", o->manifest)->required()->check(CLI::ExistingFile);
  cmd->add_option("--kind", o->kind, "synthetic, lbp, lbp4 or bsif")
      ->check(CLI::IsMember({"synthetic", "lbp", "lbp4", "bsif"}))
      ->capture_default_str();
  cmd->add_option("--images", o->images, "Directories holding <id>.png")->check(CLI::ExistingDirectory);
  cmd->add_option("--bank", o->bank, "BSIF filter bank file (default: seeded zero-mean bank)")->check(CLI::ExistingFile);
  cmd->add_option("--bank-count", o->bank_count)->check(CLI::Range(1, 12))->capture_default_str();
  cmd->add_option("--bank-size", o->bank_size)->capture_default_str();
  cmd->add_option("--reference-suffix", o->reference_suffix,
                  "Suffix of degraded reference and morph files, e.g. _psjp2");
  cmd->add_option("--dim", o->synthetic.dim, "Synthetic embedding dimension")->capture_default_str();
  cmd->add_option("--sigma", o->synthetic.sigma, "Synthetic embedding noise")->capture_default_str();
  cmd->add_option("--morph-alpha", o->synthetic.morph_alpha)->capture_default_str();

  common.on_run(cmd, [o, &common, io] {
    const DatasetManifest m = load_valid_manifest(o->manifest);
    RunRecord rec("features", common.seed);
    rec.input("manifest", o->manifest);
    rec.param("kind", o->kind);

    features::EmbeddingStore store;
    if (o->kind == "synthetic") {
      auto cfg = o->synthetic;
      cfg.seed = derive_seed(common.seed, "embeddings");
      cfg.validate();
      rec.param("dim", cfg.dim);
      rec.param("sigma", cfg.sigma);
      rec.param("morph_alpha", cfg.morph_alpha);
      store = features::synthesize_embeddings(cfg, m);
    } else {
      if (o->images.empty()) throw Error(ErrorCode::InvalidArgument, "--images is required for image features");
      const auto ids = all_ids(m);
      std::vector<fs::path> files;
      for (const auto& [id, is_ref] : ids) files.push_back(locate(o->images, id + (is_ref ? o->reference_suffix : ""), ".png"));
      rec.inputs("images", files);
      rec.param("reference_suffix", o->reference_suffix);

      features::FilterBank bank;
      std::string tag = o->kind;
      if (o->kind == "bsif") {
        if (!o->bank.empty()) {
          bank = features::FilterBank::load(o->bank);
          rec.input("bank", o->bank);
        } else {
          bank = features::FilterBank::random_zero_mean(o->bank_count, o->bank_size, derive_seed(common.seed, "bsif"));
          rec.param("bank", {{"count", o->bank_count}, {"size", o->bank_size}});
        }
        tag = "bsif-k" + std::to_string(bank.count()) + "n" + std::to_string(bank.size());
      }
      features::TextureOptions opts;
      opts.cells = o->kind == "lbp4" ? 4 : 1;
      opts.norm = features::HistogramNorm::Probability;

      std::vector<std::vector<double>> vectors(ids.size());
      parallel_for(ids.size(), common.jobs, [&](std::size_t i) {
        const RasterImage gray = to_grayscale(read_png(files[i]));
        vectors[i] = o->kind == "bsif" ? features::bsif_histogram(gray, bank, opts) : features::lbp_histogram(gray, opts);
      });
      store = features::EmbeddingStore(vectors.empty() ? 0 : vectors[0].size(), tag);
      for (std::size_t i = 0; i < ids.size(); ++i) store.insert(ids[i].first, EmbeddingVector(std::move(vectors[i])));
    }
    const std::string hash = rec.hash();
    OutputStage stage(common.out);
    stage.write_text("embeddings.txt", features::format_embeddings(store, {{"run_record", hash}}));
    io.out << "features: " << store.size() << " vectors of dim " << store.dim() << " (" << store.extractor() << ")\n";
    finish(stage, rec, io);
  });
}

}  // namespace madkit::cli
