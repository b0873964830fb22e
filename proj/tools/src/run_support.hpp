#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace madkit::cli {

using json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

/// Machine-readable description of one invocation. Inputs are recorded by
/// content hash rather than path, so identical inputs give identical hashes
/// wherever they live.
class RunRecord {
 public:
  explicit RunRecord(std::string command, std::uint64_t seed);

  void param(const std::string& key, json value);
  void input(const std::string& key, const std::filesystem::path& path);
  /// Several files under one key, hashed as a sorted (name, hash) list.
  void inputs(const std::string& key, const std::vector<std::filesystem::path>& paths);

  std::string hash() const;
  std::string text() const;

 private:
  json body_;
};

/// Collects outputs in a hidden staging directory and moves them into place
/// on commit(). Without a commit the staged files are removed, so a failed
/// command leaves no partial outputs behind.
class OutputStage {
 public:
  explicit OutputStage(std::filesystem::path out_dir);
  ~OutputStage();
  OutputStage(const OutputStage&) = delete;
  OutputStage& operator=(const OutputStage&) = delete;

  /// Staging location for `relative`, with parent directories created.
  std::filesystem::path path(const std::string& relative);
  void write_text(const std::string& relative, const std::string& text);
  void commit();

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path staging_;
  std::vector<std::string> files_;
  bool committed_ = false;
};

}  // namespace madkit::cli
