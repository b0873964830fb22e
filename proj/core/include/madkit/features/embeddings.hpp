#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "madkit/embedding.hpp"

namespace madkit::features {

/// Image id -> feature vector, uniform dimension, tagged with its extractor.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::size_t dim, std::string extractor);

  std::size_t dim() const noexcept { return dim_; }
  const std::string& extractor() const noexcept { return extractor_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool contains(const std::string& id) const { return vectors_.count(id) != 0; }

  /// Throws on dimension mismatch or duplicate id.
  void insert(const std::string& id, EmbeddingVector vector);
  /// Throws ErrorCode::InvalidArgument naming the id when absent.
  const EmbeddingVector& at(const std::string& id) const;

  const std::map<std::string, EmbeddingVector>& entries() const noexcept { return vectors_; }

 private:
  std::size_t dim_ = 0;
  std::string extractor_;
  std::map<std::string, EmbeddingVector> vectors_;
};

/// Text format:
///   dim=<d> extractor=<tag> [key=value ...]
///   <image id> <d space-separated decimal floats>
/// Blank lines and lines starting with '#' are skipped. Values are written
/// with 17 significant digits, so save/load round-trips exactly.
EmbeddingStore load_embeddings(const std::filesystem::path& path);
EmbeddingStore parse_embeddings(const std::string& text);
std::string format_embeddings(const EmbeddingStore& store,
                              const std::map<std::string, std::string>& extra_header = {});
void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& extra_header = {});

}  // namespace madkit::features
