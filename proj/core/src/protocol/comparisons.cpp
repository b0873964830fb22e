#include "madkit/protocol/comparisons.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "madkit/error.hpp"

namespace madkit::protocol {

std::string to_string(ComparisonKind kind) {
  switch (kind) {
    case ComparisonKind::Genuine: return "genuine";
    case ComparisonKind::Impostor: return "impostor";
    case ComparisonKind::Attack: return "attack";
  }
  return "?";
}

ComparisonKind parse_comparison_kind(const std::string& text) {
  if (text == "genuine") return ComparisonKind::Genuine;
  if (text == "impostor") return ComparisonKind::Impostor;
  if (text == "attack") return ComparisonKind::Attack;
  throw Error(ErrorCode::Parse, "unknown comparison kind '" + text + "'");
}

std::vector<Comparison> ComparisonSet::sorted() const {
  std::vector<Comparison> all;
  all.reserve(size());
  all.insert(all.end(), genuine.begin(), genuine.end());
  all.insert(all.end(), impostor.begin(), impostor.end());
  all.insert(all.end(), attacks.begin(), attacks.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::pair<std::string, std::string> morph_contributors(const DatasetManifest& manifest,
                                                       const MorphPair& pair) {
  const SubjectRecord* sa = manifest.owner_of(pair.image_a);
  const SubjectRecord* sb = manifest.owner_of(pair.image_b);
  if (!sa || !sb) throw Error(ErrorCode::Validation, "morph " + pair.id + " has unknown inputs");
  if (pair.attacker && *pair.attacker == sb->id) return {sb->id, sa->id};
  return {sa->id, sb->id};
}

ComparisonSet enumerate_comparisons(const DatasetManifest& manifest, AttackConvention convention) {
  const auto violations = validate_manifest(manifest);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw Error(ErrorCode::Validation, "manifest invalid: " + v.rule + " (" + v.id + "), " +
                                           std::to_string(violations.size()) + " violation(s)");
  }
  struct Owned {
    const std::string* subject;
    const std::string* image;
  };
  std::vector<Owned> references, probes;
  for (const auto& subject : manifest.subjects) {
    for (const auto& img : subject.images) {
      if (img.role == ImageRole::BonaFideReference) references.push_back({&subject.id, &img.id});
      if (img.role == ImageRole::Probe) probes.push_back({&subject.id, &img.id});
    }
  }
  ComparisonSet set;
  for (const auto& r : references) {
    for (const auto& p : probes) {
      Comparison c{ComparisonKind::Genuine, *r.image, *p.image, *p.subject};
      if (*r.subject == *p.subject) {
        set.genuine.push_back(std::move(c));
      } else {
        c.kind = ComparisonKind::Impostor;
        set.impostor.push_back(std::move(c));
      }
    }
  }
  for (const auto& pair : manifest.morph_pairs) {
    const auto [attacker, accomplice] = morph_contributors(manifest, pair);
    for (const auto& p : probes) {
      const bool match = *p.subject == attacker ||
                         (convention == AttackConvention::BothContributors && *p.subject == accomplice);
      if (match) set.attacks.push_back({ComparisonKind::Attack, pair.id, *p.image, *p.subject});
    }
  }
  for (auto* v : {&set.genuine, &set.impostor, &set.attacks}) std::sort(v->begin(), v->end());
  return set;
}

AttackGroups group_attacks(const std::vector<Comparison>& attacks) {
  AttackGroups groups;
  for (const auto& c : attacks) {
    if (c.kind != ComparisonKind::Attack) continue;
    groups[c.reference_id][c.subject_id].push_back(c.probe_id);
  }
  return groups;
}

namespace {
constexpr const char* kHeader = "kind,ref_id,probe_id,subject_id";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}
}  // namespace

std::string format_comparisons_csv(const ComparisonSet& set, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << kHeader << '\n';
  for (const auto& c : set.sorted()) {
    for (const std::string* id : {&c.reference_id, &c.probe_id, &c.subject_id}) {
      if (id->find_first_of(",\n") != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "id '" + *id + "' cannot be written to CSV");
      }
    }
    out << to_string(c.kind) << ',' << c.reference_id << ',' << c.probe_id << ',' << c.subject_id
        << '\n';
  }
  return out.str();
}

ComparisonSet parse_comparisons_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  ComparisonSet set;
  std::set<Comparison> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kHeader) throw ParseError("expected header " + std::string(kHeader), line_no);
      header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    Comparison c;
    try {
      c.kind = parse_comparison_kind(fields[0]);
    } catch (const Error&) {
      throw ParseError("unknown comparison kind '" + fields[0] + "'", line_no, "kind");
    }
    c.reference_id = fields[1];
    c.probe_id = fields[2];
    c.subject_id = fields[3];
    if (!seen.insert(c).second) throw ParseError("duplicate comparison", line_no);
    switch (c.kind) {
      case ComparisonKind::Genuine: set.genuine.push_back(std::move(c)); break;
      case ComparisonKind::Impostor: set.impostor.push_back(std::move(c)); break;
      case ComparisonKind::Attack: set.attacks.push_back(std::move(c)); break;
    }
  }
  if (!header) throw ParseError("missing header", line_no);
  return set;
}

}  // namespace madkit::protocol
