#include "madkit/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "madkit/error.hpp"

namespace madkit {

using nlohmann::json;

std::string to_string(Sex sex) { return sex == Sex::Male ? "male" : "female"; }

std::string to_string(ImageRole role) {
  switch (role) {
    case ImageRole::BonaFideReference: return "reference";
    case ImageRole::MorphInput: return "morph-input";
    case ImageRole::Probe: return "probe";
  }
  return "?";
}

std::string to_string(PostProcessing pp) {
  switch (pp) {
    case PostProcessing::NPP: return "NPP";
    case PostProcessing::Resized: return "Resized";
    case PostProcessing::JP2: return "JP2";
    case PostProcessing::PSJP2: return "PS-JP2";
  }
  return "?";
}

Sex parse_sex(const std::string& text) {
  if (text == "male" || text == "M" || text == "m") return Sex::Male;
  if (text == "female" || text == "F" || text == "f") return Sex::Female;
  throw Error(ErrorCode::Parse, "unknown sex '" + text + "'");
}

ImageRole parse_role(const std::string& text) {
  if (text == "reference" || text == "bona-fide-reference") return ImageRole::BonaFideReference;
  if (text == "morph-input") return ImageRole::MorphInput;
  if (text == "probe") return ImageRole::Probe;
  throw Error(ErrorCode::Parse, "unknown image role '" + text + "'");
}

PostProcessing parse_post_processing(const std::string& text) {
  if (text == "NPP" || text == "npp") return PostProcessing::NPP;
  if (text == "Resized" || text == "resized" || text == "rs") return PostProcessing::Resized;
  if (text == "JP2" || text == "jp2") return PostProcessing::JP2;
  if (text == "PS-JP2" || text == "ps-jp2" || text == "psjp2") return PostProcessing::PSJP2;
  throw Error(ErrorCode::Parse, "unknown post-processing '" + text + "'");
}

const SubjectRecord* DatasetManifest::find_subject(const std::string& subject_id) const {
  for (const auto& s : subjects) {
    if (s.id == subject_id) return &s;
  }
  return nullptr;
}

const SubjectRecord* DatasetManifest::owner_of(const std::string& image_id) const {
  for (const auto& s : subjects) {
    for (const auto& img : s.images) {
      if (img.id == image_id) return &s;
    }
  }
  return nullptr;
}

const ImageRecord* DatasetManifest::find_image(const std::string& image_id) const {
  for (const auto& s : subjects) {
    for (const auto& img : s.images) {
      if (img.id == image_id) return &img;
    }
  }
  return nullptr;
}

const MorphPair* DatasetManifest::find_morph(const std::string& morph_id) const {
  for (const auto& m : morph_pairs) {
    if (m.id == morph_id) return &m;
  }
  return nullptr;
}

std::vector<const ImageRecord*> DatasetManifest::images_with_role(ImageRole role) const {
  std::vector<const ImageRecord*> out;
  for (const auto& s : subjects) {
    for (const auto& img : s.images) {
      if (img.role == role) out.push_back(&img);
    }
  }
  return out;
}

std::vector<Violation> validate_manifest(const DatasetManifest& manifest) {
  std::vector<Violation> out;
  auto report = [&](std::string rule, const std::string& id, std::string detail = {}) {
    out.push_back({std::move(rule), id, std::move(detail)});
  };

  struct ImageInfo {
    const SubjectRecord* subject;
    const ImageRecord* image;
  };
  std::set<std::string> subject_ids;
  std::unordered_map<std::string, ImageInfo> images;

  for (const auto& subject : manifest.subjects) {
    if (subject.id.empty()) report("empty subject id", subject.id);
    if (!subject_ids.insert(subject.id).second) report("duplicate subject id", subject.id);
    for (const auto& img : subject.images) {
      if (img.id.empty()) {
        report("empty image id", subject.id, "image of subject " + subject.id);
        continue;
      }
      auto [it, inserted] = images.emplace(img.id, ImageInfo{&subject, &img});
      if (!inserted) {
        if (it->second.image->role != img.role) {
          report("role overlap", img.id,
                 to_string(it->second.image->role) + " and " + to_string(img.role));
        } else {
          report("duplicate image id", img.id);
        }
      }
      if (img.role != ImageRole::BonaFideReference && img.post_processing != PostProcessing::NPP) {
        report("post-processing on non-reference", img.id, to_string(img.post_processing));
      }
    }
  }

  std::set<std::string> morph_ids;
  std::set<std::string> used_inputs;
  for (const auto& pair : manifest.morph_pairs) {
    if (pair.id.empty()) report("empty morph id", pair.id);
    if (!morph_ids.insert(pair.id).second) report("duplicate morph id", pair.id);
    if (images.count(pair.id) != 0) report("morph id collision", pair.id);
    if (!(pair.alpha > 0.0 && pair.alpha < 1.0)) {
      report("alpha out of range", pair.id, std::to_string(pair.alpha));
    }
    if (pair.tool.empty()) report("empty tool tag", pair.id);

    const auto ia = images.find(pair.image_a);
    const auto ib = images.find(pair.image_b);
    bool resolvable = true;
    for (const auto& [ref, it] : {std::pair{&pair.image_a, ia}, std::pair{&pair.image_b, ib}}) {
      if (it == images.end()) {
        report("unknown image id", pair.id, *ref);
        resolvable = false;
      } else if (it->second.image->role != ImageRole::MorphInput) {
        report("pair input not morph-input", pair.id, *ref);
      }
    }
    if (pair.image_a == pair.image_b) report("pair self", pair.id, pair.image_a);
    if (resolvable) {
      const auto& a = ia->second;
      const auto& b = ib->second;
      if (a.subject == b.subject && pair.image_a != pair.image_b) {
        report("pair same subject", pair.id, a.subject->id);
      }
      if (a.subject->sex != b.subject->sex) report("pair sex mismatch", pair.id);
      if (a.image->glasses && b.image->glasses) report("pair both glasses", pair.id);
      if (pair.attacker && *pair.attacker != a.subject->id && *pair.attacker != b.subject->id) {
        report("unknown attacker", pair.id, *pair.attacker);
      }
    }
    for (const auto* input : {&pair.image_a, &pair.image_b}) {
      if (!used_inputs.insert(*input).second) report("input reuse", pair.id, *input);
    }
  }
  return out;
}

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& path, bool required, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ParseError("missing required field", std::nullopt, path + "." + key);
    return fallback;
  }
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw ParseError("wrong type", std::nullopt, path + "." + key);
  }
}

template <typename Fn>
auto with_field(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), std::nullopt, field);
  }
}

const json& require_array(const json& obj, const char* key, const std::string& path, bool required) {
  static const json empty = json::array();
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ParseError("missing required field", std::nullopt, path + key);
    return empty;
  }
  if (!it->is_array()) throw ParseError("expected an array", std::nullopt, path + key);
  return *it;
}

}  // namespace

DatasetManifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed manifest JSON: ") + e.what(), line_of(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("manifest must be a JSON object", 1);
  const int version = get_field<int>(doc, "version", "", false, 1);
  if (version != 1) throw ParseError("unsupported manifest version", std::nullopt, "version");

  DatasetManifest m;
  m.id = get_field<std::string>(doc, "id", "", false, "");
  const json& subjects = require_array(doc, "subjects", "", true);
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    const std::string path = "subjects[" + std::to_string(i) + "]";
    const json& js = subjects[i];
    if (!js.is_object()) throw ParseError("expected an object", std::nullopt, path);
    SubjectRecord s;
    s.id = get_field<std::string>(js, "id", path, true, "");
    const auto sex = get_field<std::string>(js, "sex", path, true, "");
    s.sex = with_field(path + ".sex", [&] { return parse_sex(sex); });
    const json& imgs = require_array(js, "images", path + ".", false);
    for (std::size_t k = 0; k < imgs.size(); ++k) {
      const std::string ipath = path + ".images[" + std::to_string(k) + "]";
      const json& ji = imgs[k];
      if (!ji.is_object()) throw ParseError("expected an object", std::nullopt, ipath);
      ImageRecord img;
      img.id = get_field<std::string>(ji, "id", ipath, true, "");
      const auto role = get_field<std::string>(ji, "role", ipath, true, "");
      img.role = with_field(ipath + ".role", [&] { return parse_role(role); });
      img.session = get_field<std::string>(ji, "session", ipath, false, "");
      img.glasses = get_field<bool>(ji, "glasses", ipath, false, false);
      const auto pp = get_field<std::string>(ji, "post_processing", ipath, false, "NPP");
      img.post_processing =
          with_field(ipath + ".post_processing", [&] { return parse_post_processing(pp); });
      s.images.push_back(std::move(img));
    }
    m.subjects.push_back(std::move(s));
  }
  const json& pairs = require_array(doc, "morph_pairs", "", false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "morph_pairs[" + std::to_string(i) + "]";
    const json& jp = pairs[i];
    if (!jp.is_object()) throw ParseError("expected an object", std::nullopt, path);
    MorphPair p;
    p.id = get_field<std::string>(jp, "id", path, true, "");
    p.image_a = get_field<std::string>(jp, "a", path, true, "");
    p.image_b = get_field<std::string>(jp, "b", path, true, "");
    p.tool = get_field<std::string>(jp, "tool", path, false, "opencv");
    p.alpha = get_field<double>(jp, "alpha", path, false, 0.5);
    if (jp.contains("attacker")) p.attacker = get_field<std::string>(jp, "attacker", path, true, "");
    m.morph_pairs.push_back(std::move(p));
  }
  return m;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

std::string format_manifest(const DatasetManifest& manifest) {
  json doc;
  doc["version"] = 1;
  doc["id"] = manifest.id;
  json subjects = json::array();
  for (const auto& s : manifest.subjects) {
    json js;
    js["id"] = s.id;
    js["sex"] = to_string(s.sex);
    json imgs = json::array();
    for (const auto& img : s.images) {
      json ji;
      ji["id"] = img.id;
      ji["role"] = to_string(img.role);
      ji["session"] = img.session;
      ji["glasses"] = img.glasses;
      if (img.role == ImageRole::BonaFideReference) {
        ji["post_processing"] = to_string(img.post_processing);
      }
      imgs.push_back(std::move(ji));
    }
    js["images"] = std::move(imgs);
    subjects.push_back(std::move(js));
  }
  doc["subjects"] = std::move(subjects);
  json pairs = json::array();
  for (const auto& p : manifest.morph_pairs) {
    json jp;
    jp["id"] = p.id;
    jp["a"] = p.image_a;
    jp["b"] = p.image_b;
    jp["tool"] = p.tool;
    jp["alpha"] = p.alpha;
    if (p.attacker) jp["attacker"] = *p.attacker;
    pairs.push_back(std::move(jp));
  }
  doc["morph_pairs"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write manifest " + path.string());
  out << format_manifest(manifest);
}

}  // namespace madkit
