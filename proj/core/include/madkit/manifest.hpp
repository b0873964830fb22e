#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace madkit {

enum class Sex { Male, Female };

enum class ImageRole { BonaFideReference, MorphInput, Probe };

enum class PostProcessing { NPP, Resized, JP2, PSJP2 };

struct ImageRecord {
  std::string id;
  ImageRole role = ImageRole::Probe;
  std::string session;
  bool glasses = false;
  /// Meaningful for reference images only.
  PostProcessing post_processing = PostProcessing::NPP;
};

struct SubjectRecord {
  std::string id;
  Sex sex = Sex::Male;
  std::vector<ImageRecord> images;
};

/// One morph to be generated from two morph-input images.
///
/// `alpha` is the weight of image `a` in both geometry and blending. The
/// subject of image `a` is the attacker unless `attacker` names the other one.
struct MorphPair {
  std::string id;
  std::string image_a;
  std::string image_b;
  std::string tool = "opencv";
  double alpha = 0.5;
  std::optional<std::string> attacker;
};

struct DatasetManifest {
  std::string id;
  std::vector<SubjectRecord> subjects;
  std::vector<MorphPair> morph_pairs;

  const SubjectRecord* find_subject(const std::string& subject_id) const;
  /// Subject owning a (non-morph) image id, or nullptr.
  const SubjectRecord* owner_of(const std::string& image_id) const;
  const ImageRecord* find_image(const std::string& image_id) const;
  const MorphPair* find_morph(const std::string& morph_id) const;

  std::vector<const ImageRecord*> images_with_role(ImageRole role) const;
};

struct Violation {
  std::string rule;
  std::string id;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks every structural and pairing rule. Violations are reported in
/// manifest traversal order: subjects, images, then morph pairs.
std::vector<Violation> validate_manifest(const DatasetManifest& manifest);

/// JSON manifest. Syntax errors carry a line number; schema errors carry the
/// offending field path, e.g. `subjects[2].images[0].role`.
DatasetManifest parse_manifest(const std::string& text);
DatasetManifest read_manifest(const std::filesystem::path& path);
std::string format_manifest(const DatasetManifest& manifest);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

std::string to_string(Sex sex);
std::string to_string(ImageRole role);
std::string to_string(PostProcessing pp);
Sex parse_sex(const std::string& text);
ImageRole parse_role(const std::string& text);
PostProcessing parse_post_processing(const std::string& text);

}  // namespace madkit
