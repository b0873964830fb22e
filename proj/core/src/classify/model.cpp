#include "madkit/classify/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "madkit/error.hpp"
#include "madkit/parallel.hpp"

namespace madkit::classify {

using json = nlohmann::json;

double MadModel::decision(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "feature dimension " + std::to_string(x.size()) +
                                                  " does not match model dimension " +
                                                  std::to_string(dim()));
  }
  std::vector<double> scaled;
  if (!standardizer.empty()) {
    scaled = standardizer.apply(x);
    x = scaled;
  }
  // Terms are summed in sorted order so the result does not depend on the
  // order in which support vectors are stored.
  std::vector<double> terms(support_vectors.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = coefficients[i] * rbf_kernel(support_vectors[i], x, gamma);
  }
  std::sort(terms.begin(), terms.end());
  double f = 0.0;
  for (double t : terms) f += t;
  return f + bias;
}

double MadModel::score(std::span<const double> x) const { return sigmoid(decision(x)); }

std::vector<double> MadModel::score_batch(const std::vector<std::vector<double>>& rows,
                                          unsigned jobs) const {
  std::vector<double> out(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) { out[i] = score(rows[i]); });
  return out;
}

double score(const MadModel& model, std::span<const double> x) { return model.score(x); }

TrainResult train(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                  const TrainOptions& options, ModelMetadata metadata) {
  TrainResult result;
  MadModel& model = result.model;
  if (rows.empty()) throw Error(ErrorCode::EmptyClass, "no training rows");
  if (options.standardize) model.standardizer = features::Standardizer::fit(rows);
  result.solver_rows.reserve(rows.size());
  for (const auto& r : rows) {
    result.solver_rows.push_back(model.standardizer.empty() ? r : model.standardizer.apply(r));
  }
  result.solution = solve_svm(result.solver_rows, labels, options.svm);
  const SvmSolution& sol = result.solution;

  for (std::size_t i = 0; i < sol.alpha.size(); ++i) {
    if (sol.alpha[i] > 0.0) {
      model.support_vectors.push_back(result.solver_rows[i]);
      model.coefficients.push_back(sol.alpha[i] * labels[i]);
    }
  }
  model.bias = sol.bias;
  model.gamma = sol.gamma;
  metadata.feature_dim = rows.front().size();
  metadata.gamma_rule = options.svm.gamma ? "fixed" : "auto";
  metadata.C = sol.C;
  metadata.iterations = sol.iterations;
  metadata.seed = options.svm.seed;
  std::sort(metadata.train_subjects.begin(), metadata.train_subjects.end());
  model.metadata = std::move(metadata);

  const auto& cal_rows = options.calibration_rows ? *options.calibration_rows : rows;
  const std::span<const int> cal_labels =
      options.calibration_labels ? std::span<const int>(*options.calibration_labels) : labels;
  if (cal_rows.size() != cal_labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, "calibration rows and labels differ in length");
  }
  std::vector<double> decisions(cal_rows.size());
  for (std::size_t i = 0; i < cal_rows.size(); ++i) decisions[i] = model.decision(cal_rows[i]);
  model.sigmoid = calibrate(decisions, cal_labels);
  return result;
}

namespace {

[[noreturn]] void corrupt(const std::string& detail) {
  throw Error(ErrorCode::CorruptModel, "corrupt model: " + detail);
}

}  // namespace

std::string format_model(const MadModel& model) {
  if (model.support_vectors.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot save a model without support vectors");
  }
  if (model.support_vectors.size() != model.coefficients.size()) {
    throw Error(ErrorCode::InvalidArgument, "support vectors and coefficients differ in count");
  }
  const ModelMetadata& m = model.metadata;
  json j;
  j["format"] = "madkit-model";
  j["version"] = kModelFormatVersion;
  j["metadata"] = {{"feature_dim", m.feature_dim}, {"extractor", m.extractor}, {"seed", m.seed},
                   {"gamma_rule", m.gamma_rule},   {"C", m.C},                 {"iterations", m.iterations},
                   {"train_manifest_id", m.train_manifest_id},
                   {"train_subjects", m.train_subjects}, {"extra", m.extra}};
  j["gamma"] = model.gamma;
  j["bias"] = model.bias;
  j["sigmoid"] = {{"A", model.sigmoid.A}, {"B", model.sigmoid.B}, {"fallback", model.sigmoid.fallback}};
  j["standardizer"] = {{"mean", model.standardizer.mean}, {"scale", model.standardizer.scale}};
  j["coefficients"] = model.coefficients;
  j["support_vectors"] = model.support_vectors;
  return j.dump(1) + "\n";
}

MadModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    corrupt(std::string("unreadable container (") + e.what() + ")");
  }
  if (!j.is_object() || j.value("format", "") != "madkit-model") corrupt("not a madkit model");
  if (!j.contains("version") || !j["version"].is_number_integer()) corrupt("missing version");
  if (j["version"].get<int>() != kModelFormatVersion) {
    throw Error(ErrorCode::CorruptModel, "unsupported model version " +
                                             std::to_string(j["version"].get<int>()) + ", expected " +
                                             std::to_string(kModelFormatVersion));
  }
  MadModel model;
  try {
    const json& m = j.at("metadata");
    model.metadata.feature_dim = m.at("feature_dim").get<std::size_t>();
    model.metadata.extractor = m.at("extractor").get<std::string>();
    model.metadata.seed = m.at("seed").get<std::uint64_t>();
    model.metadata.gamma_rule = m.at("gamma_rule").get<std::string>();
    model.metadata.C = m.at("C").get<double>();
    model.metadata.iterations = m.at("iterations").get<std::size_t>();
    model.metadata.train_manifest_id = m.at("train_manifest_id").get<std::string>();
    model.metadata.train_subjects = m.at("train_subjects").get<std::vector<std::string>>();
    model.metadata.extra = m.at("extra").get<std::map<std::string, std::string>>();
    model.gamma = j.at("gamma").get<double>();
    model.bias = j.at("bias").get<double>();
    model.sigmoid.A = j.at("sigmoid").at("A").get<double>();
    model.sigmoid.B = j.at("sigmoid").at("B").get<double>();
    model.sigmoid.fallback = j.at("sigmoid").at("fallback").get<bool>();
    model.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    model.standardizer.scale = j.at("standardizer").at("scale").get<std::vector<double>>();
    model.coefficients = j.at("coefficients").get<std::vector<double>>();
    model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    corrupt(std::string("missing or mistyped field (") + e.what() + ")");
  }
  const std::size_t d = model.metadata.feature_dim;
  if (model.support_vectors.empty()) corrupt("no support vectors");
  if (model.support_vectors.size() != model.coefficients.size()) corrupt("coefficient count mismatch");
  for (const auto& sv : model.support_vectors) {
    if (sv.size() != d) corrupt("support vector dimension mismatch");
  }
  if (!model.standardizer.mean.empty() &&
      (model.standardizer.mean.size() != d || model.standardizer.scale.size() != d)) {
    corrupt("standardizer dimension mismatch");
  }
  if (!(model.gamma > 0.0)) corrupt("gamma must be positive");
  return model;
}

void save_model(const MadModel& model, const std::filesystem::path& path) {
  const std::string text = format_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

MadModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace madkit::classify
