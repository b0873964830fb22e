#include "madkit/features/embeddings.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <fstream>
#include <sstream>

#include "madkit/error.hpp"

namespace madkit::features {

EmbeddingStore::EmbeddingStore(std::size_t dim, std::string extractor)
    : dim_(dim), extractor_(std::move(extractor)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  if (extractor_.empty() || extractor_.find_first_of(" \t\n=") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "extractor tag must be a non-empty single token");
  }
}

void EmbeddingStore::insert(const std::string& id, EmbeddingVector vector) {
  if (vector.dim() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "embedding " + id + " has dimension " +
                                                  std::to_string(vector.dim()) + ", store has " +
                                                  std::to_string(dim_));
  }
  if (id.empty() || id.find_first_of(" \t\n") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "embedding id '" + id + "' must be a single token");
  }
  if (!vectors_.emplace(id, std::move(vector)).second) {
    throw Error(ErrorCode::InvalidArgument, "duplicate id " + id);
  }
}

const EmbeddingVector& EmbeddingStore::at(const std::string& id) const {
  const auto it = vectors_.find(id);
  if (it == vectors_.end()) throw Error(ErrorCode::InvalidArgument, "no embedding for id " + id);
  return it->second;
}

EmbeddingStore parse_embeddings(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<EmbeddingStore> store;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (!store) {
      std::string token;
      std::optional<std::size_t> dim;
      std::string extractor;
      while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ParseError("header entry without '='", line_no, token);
        const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (key == "dim") {
          char* end = nullptr;
          const unsigned long long d = std::strtoull(value.c_str(), &end, 10);
          if (value.empty() || *end != '\0' || d == 0) throw ParseError("invalid dim", line_no, "dim");
          dim = static_cast<std::size_t>(d);
        } else if (key == "extractor") {
          extractor = value;
        }
      }
      if (!dim) throw ParseError("header must start with dim=<d>", line_no, "dim");
      if (extractor.empty()) throw ParseError("header lacks extractor=<tag>", line_no, "extractor");
      store.emplace(*dim, extractor);
      continue;
    }
    std::string id;
    fields >> id;
    std::vector<double> values;
    values.reserve(store->dim());
    std::string token;
    while (fields >> token) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(token.c_str(), &end);
      if (*end != '\0' || end == token.c_str()) {
        throw ParseError("row " + id + ": invalid number '" + token + "'", line_no, id);
      }
      if (!std::isfinite(v)) throw ParseError("row " + id + ": non-finite value", line_no, id);
      values.push_back(v);
    }
    if (values.size() != store->dim()) {
      throw ParseError("row " + id + ": dim mismatch, expected " + std::to_string(store->dim()) +
                           " values, got " + std::to_string(values.size()),
                       line_no, id);
    }
    if (store->contains(id)) throw ParseError("duplicate id " + id, line_no, id);
    store->insert(id, EmbeddingVector(std::move(values)));
  }
  if (!store) throw ParseError("missing embedding header", line_no);
  return std::move(*store);
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_embeddings(buffer.str());
}

std::string format_embeddings(const EmbeddingStore& store,
                              const std::map<std::string, std::string>& extra_header) {
  std::string out = "dim=" + std::to_string(store.dim()) + " extractor=" + store.extractor();
  for (const auto& [key, value] : extra_header) {
    if (key == "dim" || key == "extractor" || key.empty() ||
        (key + value).find_first_of(" \t\n=") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "invalid embedding header entry " + key);
    }
    out += " " + key + "=" + value;
  }
  out += '\n';
  char buf[32];
  for (const auto& [id, vec] : store.entries()) {
    out += id;
    for (double v : vec.values()) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& extra_header) {
  const std::string text = format_embeddings(store, extra_header);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

}  // namespace madkit::features
