#include "madkit/features/texture.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "madkit/error.hpp"
#include "madkit/rng.hpp"

namespace madkit::features {

namespace {

constexpr int kNeighbours[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                                   {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};

void check_gray(const RasterImage& gray, int min_side) {
  if (gray.channels() != 1) throw Error(ErrorCode::InvalidArgument, "grayscale required");
  if (gray.width() < min_side || gray.height() < min_side) {
    throw Error(ErrorCode::InvalidArgument,
                "image must be at least " + std::to_string(min_side) + " pixels per side");
  }
}

void check_cells(const TextureOptions& options) {
  if (options.cells != 1 && options.cells != 4) {
    throw Error(ErrorCode::InvalidArgument, "cells must be 1 or 4");
  }
}

// Histogram of codes over the interior [border, w-border) x [border, h-border),
// one block of `bins` per cell; cells partition the full image.
template <typename Code>
std::vector<double> cell_histogram(const RasterImage& gray, int border, std::size_t bins,
                                   const TextureOptions& options, Code&& code) {
  const int cells = options.cells;
  std::vector<double> hist(bins * static_cast<std::size_t>(cells * cells), 0.0);
  for (int y = border; y < gray.height() - border; ++y) {
    const int cy = y * cells / gray.height();
    for (int x = border; x < gray.width() - border; ++x) {
      const int cx = x * cells / gray.width();
      hist[static_cast<std::size_t>(cy * cells + cx) * bins + code(x, y)] += 1.0;
    }
  }
  if (options.norm == HistogramNorm::Probability) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(cells * cells); ++c) {
      double total = 0.0;
      for (std::size_t b = 0; b < bins; ++b) total += hist[c * bins + b];
      if (total > 0.0) {
        for (std::size_t b = 0; b < bins; ++b) hist[c * bins + b] /= total;
      }
    }
  }
  return hist;
}

}  // namespace

std::uint8_t lbp_code(const RasterImage& gray, int x, int y) noexcept {
  const std::uint8_t centre = gray.at(x, y);
  unsigned code = 0;
  for (const auto& d : kNeighbours) {
    code = (code << 1) | (gray.at(x + d[0], y + d[1]) >= centre ? 1u : 0u);
  }
  return static_cast<std::uint8_t>(code);
}

std::vector<double> lbp_histogram(const RasterImage& gray, TextureOptions options) {
  check_gray(gray, 3);
  check_cells(options);
  return cell_histogram(gray, 1, 256, options, [&](int x, int y) { return lbp_code(gray, x, y); });
}

FilterBank::FilterBank(int size, std::vector<std::vector<double>> filters)
    : size_(size), filters_(std::move(filters)) {
  if (size_ < 1 || size_ % 2 == 0) throw Error(ErrorCode::InvalidArgument, "filter size must be odd");
  if (filters_.empty() || filters_.size() > 12) {
    throw Error(ErrorCode::InvalidArgument, "filter bank must hold 1 to 12 filters");
  }
  for (const auto& f : filters_) {
    if (f.size() != static_cast<std::size_t>(size_ * size_)) {
      throw Error(ErrorCode::DimensionMismatch, "filter has wrong number of taps");
    }
    for (double v : f) {
      if (!std::isfinite(v)) throw Error(ErrorCode::Numeric, "filter tap is not finite");
    }
  }
}

FilterBank FilterBank::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int k = -1, n = -1;
  std::vector<double> taps;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (k < 0) {
      std::string magic, kf, nf;
      fields >> magic >> kf >> nf;
      if (magic != "bsif" || kf.rfind("k=", 0) != 0 || nf.rfind("size=", 0) != 0) {
        throw ParseError("expected header 'bsif k=<k> size=<n>'", line_no);
      }
      try {
        k = std::stoi(kf.substr(2));
        n = std::stoi(nf.substr(5));
      } catch (const std::exception&) {
        throw ParseError("invalid filter bank header", line_no);
      }
      if (k < 1 || k > 12 || n < 1 || n % 2 == 0) throw ParseError("invalid k or size", line_no);
      continue;
    }
    std::string token;
    while (fields >> token) {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (*end != '\0' || !std::isfinite(v)) throw ParseError("invalid filter tap '" + token + "'", line_no);
      taps.push_back(v);
    }
  }
  if (k < 0) throw ParseError("missing filter bank header", line_no);
  const std::size_t per = static_cast<std::size_t>(n * n);
  if (taps.size() != per * static_cast<std::size_t>(k)) {
    throw ParseError("expected " + std::to_string(per * k) + " taps, got " + std::to_string(taps.size()),
                     line_no);
  }
  std::vector<std::vector<double>> filters;
  for (int j = 0; j < k; ++j) {
    filters.emplace_back(taps.begin() + static_cast<std::ptrdiff_t>(j * per),
                         taps.begin() + static_cast<std::ptrdiff_t>((j + 1) * per));
  }
  return FilterBank(n, std::move(filters));
}

FilterBank FilterBank::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open filter bank " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string FilterBank::format() const {
  std::ostringstream out;
  out << "bsif k=" << count() << " size=" << size_ << '\n' << std::setprecision(17);
  for (const auto& f : filters_) {
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) out << (c ? " " : "") << f[static_cast<std::size_t>(r * size_ + c)];
      out << '\n';
    }
  }
  return out.str();
}

FilterBank FilterBank::random_zero_mean(int count, int size, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "bsif-bank"));
  std::vector<std::vector<double>> filters(static_cast<std::size_t>(std::max(count, 0)));
  for (auto& f : filters) {
    f.resize(static_cast<std::size_t>(size * size));
    double mean = 0.0;
    for (double& v : f) mean += (v = rng.normal());
    mean /= static_cast<double>(f.size());
    for (double& v : f) v -= mean;
  }
  return FilterBank(size, std::move(filters));
}

std::uint32_t bsif_code(const RasterImage& gray, const FilterBank& bank, int x, int y) noexcept {
  const int n = bank.size(), r = n / 2;
  std::uint32_t code = 0;
  for (int j = 0; j < bank.count(); ++j) {
    const auto& f = bank.filter(j);
    double response = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) response += f[static_cast<std::size_t>(i * n + k)] * gray.at(x + k - r, y + i - r);
    }
    if (response > 0.0) code |= 1u << j;
  }
  return code;
}

std::vector<double> bsif_histogram(const RasterImage& gray, const FilterBank& bank,
                                   TextureOptions options) {
  if (bank.empty()) throw Error(ErrorCode::InvalidArgument, "BSIF filter bank missing");
  check_gray(gray, bank.size());
  check_cells(options);
  return cell_histogram(gray, bank.size() / 2, std::size_t{1} << bank.count(), options,
                        [&](int x, int y) { return bsif_code(gray, bank, x, y); });
}

}  // namespace madkit::features
