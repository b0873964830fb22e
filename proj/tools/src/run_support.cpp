#include "run_support.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "madkit/error.hpp"

namespace madkit::cli {

namespace fs = std::filesystem;

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::Numeric, "SHA-256 unavailable");
    }
  }
  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx_.get(), data, n); }
  std::string hex() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), digest, &len);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return os.str();
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunRecord::RunRecord(std::string command, std::uint64_t seed) {
  body_["tool"] = "madkit";
  body_["version"] = MADKIT_VERSION;
  body_["command"] = std::move(command);
  body_["seed"] = seed;
  body_["parameters"] = json::object();
  body_["inputs"] = json::object();
}

void RunRecord::param(const std::string& key, json value) { body_["parameters"][key] = std::move(value); }

void RunRecord::input(const std::string& key, const fs::path& path) { body_["inputs"][key] = sha256_file(path); }

void RunRecord::inputs(const std::string& key, const std::vector<fs::path>& paths) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& p : paths) entries.emplace_back(p.filename().string(), sha256_file(p));
  std::sort(entries.begin(), entries.end());
  std::string joined;
  for (const auto& [name, h] : entries) joined += name + '\0' + h + '\n';
  body_["inputs"][key] = sha256_hex(joined);
}

std::string RunRecord::hash() const { return sha256_hex(body_.dump()); }

std::string RunRecord::text() const {
  json out = body_;
  out["hash"] = hash();
  return out.dump(2) + "\n";
}

OutputStage::OutputStage(fs::path out_dir) : out_dir_(std::move(out_dir)) {
  std::error_code ec;
  fs::create_directories(out_dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + out_dir_.string());
  for (int k = 0;; ++k) {
    staging_ = out_dir_ / (".madkit-staging-" + std::to_string(k));
    if (fs::create_directory(staging_, ec)) break;
    if (ec) throw Error(ErrorCode::Io, "cannot create staging directory in " + out_dir_.string());
  }
}

OutputStage::~OutputStage() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
}

fs::path OutputStage::path(const std::string& relative) {
  const fs::path p = staging_ / relative;
  fs::create_directories(p.parent_path());
  if (std::find(files_.begin(), files_.end(), relative) == files_.end()) files_.push_back(relative);
  return p;
}

void OutputStage::write_text(const std::string& relative, const std::string& text) {
  std::ofstream out(path(relative), std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + relative);
}

void OutputStage::commit() {
  for (const auto& rel : files_) {
    const fs::path target = out_dir_ / rel;
    fs::create_directories(target.parent_path());
    std::error_code ec;
    fs::rename(staging_ / rel, target, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot move output into place: " + target.string());
  }
  committed_ = true;
}

}  // namespace madkit::cli
