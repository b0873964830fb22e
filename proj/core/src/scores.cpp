#include "madkit/scores.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "madkit/error.hpp"

namespace madkit {

ScoreSet ScoreSet::from_labeled(const std::vector<LabeledScore>& scores) {
  ScoreSet out;
  bool detection = false;
  bool recognition = false;
  for (const auto& s : scores) {
    switch (s.label) {
      case ScoreLabel::BonaFide: out.negative.push_back(s.score); detection = true; break;
      case ScoreLabel::Attack: out.positive.push_back(s.score); detection = true; break;
      case ScoreLabel::Impostor: out.negative.push_back(s.score); recognition = true; break;
      case ScoreLabel::Genuine: out.positive.push_back(s.score); recognition = true; break;
    }
  }
  if (detection && recognition) {
    throw Error(ErrorCode::InvalidArgument,
                "score set mixes detection (bona fide/attack) and recognition labels");
  }
  out.orientation = recognition ? ScoreOrientation::HigherIsMatch : ScoreOrientation::HigherIsAttack;
  return out;
}

void ScoreSet::validate() const {
  for (const auto* cls : {&negative, &positive}) {
    for (double v : *cls) {
      if (!std::isfinite(v)) throw Error(ErrorCode::Numeric, "score set contains a non-finite score");
    }
  }
  const bool det = orientation == ScoreOrientation::HigherIsAttack;
  if (negative.empty()) {
    throw Error(ErrorCode::EmptyClass, det ? "no bona fide scores" : "no impostor scores");
  }
  if (positive.empty()) {
    throw Error(ErrorCode::EmptyClass, det ? "no attack scores" : "no genuine scores");
  }
}

std::string to_string(ScoreLabel label) {
  switch (label) {
    case ScoreLabel::BonaFide: return "bona-fide";
    case ScoreLabel::Attack: return "attack";
    case ScoreLabel::Genuine: return "genuine";
    case ScoreLabel::Impostor: return "impostor";
  }
  return "?";
}

ScoreLabel parse_score_label(const std::string& text) {
  if (text == "bona-fide" || text == "bonafide" || text == "bona_fide") return ScoreLabel::BonaFide;
  if (text == "attack") return ScoreLabel::Attack;
  if (text == "genuine") return ScoreLabel::Genuine;
  if (text == "impostor") return ScoreLabel::Impostor;
  throw Error(ErrorCode::Parse, "unknown score label '" + text + "'");
}

std::vector<LabeledScore> read_score_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open score file " + path.string());
  std::vector<LabeledScore> out;
  std::string line;
  std::size_t line_no = 0;
  int score_col = -1;
  int label_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (score_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "score") score_col = static_cast<int>(i);
        if (cells[i] == "label") label_col = static_cast<int>(i);
      }
      if (score_col < 0 || label_col < 0) {
        throw ParseError("score CSV header must contain 'score' and 'label'", line_no, "header");
      }
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(score_col, label_col));
    if (cells.size() <= need) throw ParseError("too few columns", line_no, "row");
    LabeledScore s;
    try {
      std::size_t used = 0;
      s.score = std::stod(cells[static_cast<std::size_t>(score_col)], &used);
      if (used != cells[static_cast<std::size_t>(score_col)].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("invalid score value", line_no, "score");
    }
    try {
      s.label = parse_score_label(cells[static_cast<std::size_t>(label_col)]);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no, "label");
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace madkit
