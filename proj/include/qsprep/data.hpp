// Copyright 2026 The qsprep developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Dataset generation and ingestion: synthetic distribution samples, CSV /
// raw-f64 / IDX loaders, normalization to amplitude vectors, and
// average-pool downsampling for image data.
#pragma once

#include "qsprep/rng.hpp"
#include "qsprep/sim.hpp"
#include "qsprep/types.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace qsprep {

enum class DistributionKind { UNIFORM, NORMAL, LOG_NORMAL, EXPONENTIAL, DIRICHLET };

inline const char *to_string(DistributionKind kind) {
  switch (kind) {
  case DistributionKind::UNIFORM:
    return "uniform";
  case DistributionKind::NORMAL:
    return "normal";
  case DistributionKind::LOG_NORMAL:
    return "log-normal";
  case DistributionKind::EXPONENTIAL:
    return "exponential";
  case DistributionKind::DIRICHLET:
    return "dirichlet";
  }
  return "?";
}

inline DistributionKind distribution_from_string(const std::string &s) {
  if (s == "uniform") {
    return DistributionKind::UNIFORM;
  }
  if (s == "normal") {
    return DistributionKind::NORMAL;
  }
  if (s == "log-normal" || s == "lognormal") {
    return DistributionKind::LOG_NORMAL;
  }
  if (s == "exponential") {
    return DistributionKind::EXPONENTIAL;
  }
  if (s == "dirichlet") {
    return DistributionKind::DIRICHLET;
  }
  throw std::invalid_argument("unknown distribution: " + s);
}

struct Sample {
  Eigen::VectorXd raw;
  Eigen::VectorXd normalized; // unit l2 norm, length 2^n
  std::string tag;            // distribution kind or source file
  int label = -1;             // class label when present
};

struct Dataset {
  int n_qubits = 0;
  std::uint64_t seed = 0;
  std::vector<Sample> samples;

  size_t size() const { return samples.size(); }

  /// Normalized amplitudes of sample i as a complex state vector.
  StateVector state(size_t i) const {
    return samples[i].normalized.cast<Complex>();
  }
};

/// raw / ||raw||, zero-padded up to 2^n. Signs are preserved.
inline Eigen::VectorXd normalize_to_state(const Eigen::VectorXd &raw,
                                          int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (raw.size() > dim) {
    throw std::invalid_argument(
        "normalize_to_state: input length " + std::to_string(raw.size()) +
        " exceeds 2^" + std::to_string(n_qubits));
  }
  const double norm = raw.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("normalize_to_state: zero vector");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  out.head(raw.size()) = raw / norm;
  return out;
}

namespace detail {

inline Eigen::VectorXd draw_raw(DistributionKind kind, Eigen::Index dim,
                                Rng &rng, NormalSampler &normal) {
  Eigen::VectorXd raw(dim);
  switch (kind) {
  case DistributionKind::UNIFORM:
    for (Eigen::Index j = 0; j < dim; ++j) {
      raw[j] = uniform01(rng);
    }
    break;
  case DistributionKind::NORMAL:
    // Signed values kept: the RY ansatz and exact AE both represent
    // signed real amplitudes.
    for (Eigen::Index j = 0; j < dim; ++j) {
      raw[j] = normal(rng);
    }
    break;
  case DistributionKind::LOG_NORMAL:
    for (Eigen::Index j = 0; j < dim; ++j) {
      raw[j] = std::exp(normal(rng));
    }
    break;
  case DistributionKind::EXPONENTIAL:
    for (Eigen::Index j = 0; j < dim; ++j) {
      raw[j] = exponential1(rng);
    }
    break;
  case DistributionKind::DIRICHLET:
    // Dirichlet(alpha=1) over 2^n categories: Exp(1) draws, l1-normalized.
    for (Eigen::Index j = 0; j < dim; ++j) {
      raw[j] = exponential1(rng);
    }
    raw /= raw.sum();
    break;
  }
  return raw;
}

} // namespace detail

/// `count` samples from one distribution over 2^n components, each raw draw
/// l2-normalized into an amplitude vector. Bit-deterministic per seed.
inline Dataset sample_distribution(DistributionKind kind, int n_qubits,
                                   int count, std::uint64_t seed) {
  if (count < 1) {
    throw std::invalid_argument("sample_distribution: count must be >= 1");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Dataset ds;
  ds.n_qubits = n_qubits;
  ds.seed = seed;
  ds.samples.reserve(static_cast<size_t>(count));
  Rng rng(seed);
  NormalSampler normal;
  for (int i = 0; i < count; ++i) {
    Sample s;
    s.raw = detail::draw_raw(kind, dim, rng, normal);
    s.normalized = normalize_to_state(s.raw, n_qubits);
    s.tag = to_string(kind);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

/// Concatenation of per-distribution datasets; each kind gets its own
/// derived seed so mixtures stay reproducible under reordering.
inline Dataset sample_mixture(const std::vector<DistributionKind> &kinds,
                              int n_qubits, int count_per_kind,
                              std::uint64_t seed) {
  Dataset ds;
  ds.n_qubits = n_qubits;
  ds.seed = seed;
  for (size_t k = 0; k < kinds.size(); ++k) {
    Dataset part = sample_distribution(kinds[k], n_qubits, count_per_kind,
                                       seed + 1000003 * (k + 1));
    for (Sample &s : part.samples) {
      ds.samples.push_back(std::move(s));
    }
  }
  return ds;
}

/// Average-pools an image down to a 2^(n/2) x 2^(n-n/2) grid and flattens
/// it row-major. Pool windows are contiguous bands whose sizes differ by at
/// most one when the image does not divide evenly.
inline Eigen::VectorXd downsample_vector(const Eigen::MatrixXd &image,
                                         Eigen::Index target_len) {
  const int n = num_qubits(target_len);
  const Eigen::Index grid_rows = Eigen::Index{1} << (n / 2);
  const Eigen::Index grid_cols = Eigen::Index{1} << (n - n / 2);
  if (image.rows() * image.cols() < target_len || image.rows() < grid_rows ||
      image.cols() < grid_cols) {
    throw std::invalid_argument("downsample_vector: image smaller than "
                                "target grid");
  }
  Eigen::VectorXd out(target_len);
  for (Eigen::Index gr = 0; gr < grid_rows; ++gr) {
    const Eigen::Index r0 = gr * image.rows() / grid_rows;
    const Eigen::Index r1 = (gr + 1) * image.rows() / grid_rows;
    for (Eigen::Index gc = 0; gc < grid_cols; ++gc) {
      const Eigen::Index c0 = gc * image.cols() / grid_cols;
      const Eigen::Index c1 = (gc + 1) * image.cols() / grid_cols;
      out[gr * grid_cols + gc] =
          image.block(r0, c0, r1 - r0, c1 - c0).mean();
    }
  }
  return out;
}

enum class FileFormat { CSV, RAW_F64, IDX_IMAGES };

inline FileFormat file_format_from_string(const std::string &s) {
  if (s == "csv") {
    return FileFormat::CSV;
  }
  if (s == "raw_f64" || s == "raw-f64" || s == "raw") {
    return FileFormat::RAW_F64;
  }
  if (s == "idx" || s == "idx_images" || s == "idx-images") {
    return FileFormat::IDX_IMAGES;
  }
  throw std::invalid_argument("unknown file format: " + s);
}

struct LoadOptions {
  std::optional<int> n_qubits;            // inferred from data when absent
  std::optional<std::string> labels_path; // IDX label file
};

namespace detail {

inline int infer_qubits(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  return std::max(n, 1);
}

inline bool parse_double(const std::string &field, double &value) {
  const char *begin = field.data();
  const char *end = begin + field.size();
  const auto result = std::from_chars(begin, end, value);
  return result.ec == std::errc{} && result.ptr == end;
}

inline bool is_integer_field(const std::string &field) {
  if (field.empty()) {
    return false;
  }
  size_t i = (field[0] == '-' || field[0] == '+') ? 1 : 0;
  if (i == field.size()) {
    return false;
  }
  for (; i < field.size(); ++i) {
    if (field[i] < '0' || field[i] > '9') {
      return false;
    }
  }
  return true;
}

inline std::vector<std::string> split_csv_row(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding spaces and a possible trailing CR.
    size_t begin = field.find_first_not_of(" \t\r");
    size_t last = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string{}
                         : field.substr(begin, last - begin + 1));
  }
  return fields;
}

inline std::uint32_t read_u32_be(std::istream &in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char *>(b.data()), 4);
  if (!in) {
    throw std::runtime_error("unexpected end of file in IDX header");
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

inline std::uint32_t read_u32_le(std::istream &in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char *>(b.data()), 4);
  if (!in) {
    throw std::runtime_error("unexpected end of file in RAW_F64 header");
  }
  return (std::uint32_t{b[3]} << 24) | (std::uint32_t{b[2]} << 16) |
         (std::uint32_t{b[1]} << 8) | std::uint32_t{b[0]};
}

inline void write_u32_le(std::ostream &out, std::uint32_t v) {
  const std::array<unsigned char, 4> b{
      static_cast<unsigned char>(v & 0xff),
      static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char *>(b.data()), 4);
}

inline double read_f64_le(std::istream &in) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char *>(b.data()), 8);
  if (!in) {
    throw std::runtime_error("unexpected end of file in RAW_F64 body");
  }
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) {
    bits = (bits << 8) | b[static_cast<size_t>(i)];
  }
  double value = 0;
  std::memcpy(&value, &bits, sizeof(value));
  return value;
}

inline void write_f64_le(std::ostream &out, double value) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof(bits));
  std::array<unsigned char, 8> b{};
  for (size_t i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  }
  out.write(reinterpret_cast<const char *>(b.data()), 8);
}

inline Dataset load_csv(const std::filesystem::path &path,
                        const LoadOptions &opts) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      continue;
    }
    rows.push_back(split_csv_row(line));
  }
  if (rows.empty()) {
    throw std::runtime_error("CSV file " + path.string() + " has no rows");
  }
  const size_t cols = rows.front().size();
  for (const auto &row : rows) {
    if (row.size() != cols) {
      throw std::runtime_error("CSV file " + path.string() +
                               " has ragged rows");
    }
  }
  // A trailing integer column across every row is a class label, unless the
  // full width already matches the requested state dimension.
  bool labeled = cols > 1;
  for (const auto &row : rows) {
    if (!is_integer_field(row.back())) {
      labeled = false;
      break;
    }
  }
  if (opts.n_qubits &&
      static_cast<Eigen::Index>(cols) == (Eigen::Index{1} << *opts.n_qubits)) {
    labeled = false;
  }
  const size_t value_cols = labeled ? cols - 1 : cols;
  const int n = opts.n_qubits
                    ? *opts.n_qubits
                    : infer_qubits(static_cast<Eigen::Index>(value_cols));
  Dataset ds;
  ds.n_qubits = n;
  for (const auto &row : rows) {
    Sample s;
    s.raw.resize(static_cast<Eigen::Index>(value_cols));
    for (size_t c = 0; c < value_cols; ++c) {
      double value = 0;
      if (!parse_double(row[c], value)) {
        throw std::runtime_error("CSV field '" + row[c] +
                                 "' is not a number in " + path.string());
      }
      s.raw[static_cast<Eigen::Index>(c)] = value;
    }
    if (labeled) {
      s.label = std::stoi(row.back());
    }
    s.normalized = normalize_to_state(s.raw, n);
    s.tag = path.filename().string();
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

inline Dataset load_raw_f64(const std::filesystem::path &path,
                            const LoadOptions &opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  const std::uint32_t count = read_u32_le(in);
  const std::uint32_t dim = read_u32_le(in);
  if (count == 0 || dim == 0) {
    throw std::runtime_error("RAW_F64 header of " + path.string() +
                             " declares an empty dataset");
  }
  const int n = opts.n_qubits ? *opts.n_qubits
                              : infer_qubits(static_cast<Eigen::Index>(dim));
  Dataset ds;
  ds.n_qubits = n;
  ds.samples.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Sample s;
    s.raw.resize(static_cast<Eigen::Index>(dim));
    for (std::uint32_t j = 0; j < dim; ++j) {
      s.raw[static_cast<Eigen::Index>(j)] = read_f64_le(in);
    }
    s.normalized = normalize_to_state(s.raw, n);
    s.tag = path.filename().string();
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

inline Dataset load_idx_images(const std::filesystem::path &path,
                               const LoadOptions &opts) {
  constexpr std::uint32_t kImagesMagic = 0x00000803;
  constexpr std::uint32_t kLabelsMagic = 0x00000801;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  const std::uint32_t magic = read_u32_be(in);
  if (magic != kImagesMagic) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%08x", magic);
    throw std::runtime_error("IDX image magic mismatch in " + path.string() +
                             ": got " + buf + ", expected 0x00000803");
  }
  const std::uint32_t count = read_u32_be(in);
  const std::uint32_t rows = read_u32_be(in);
  const std::uint32_t cols = read_u32_be(in);

  std::vector<int> labels;
  if (opts.labels_path) {
    std::ifstream lin(*opts.labels_path, std::ios::binary);
    if (!lin) {
      throw std::runtime_error("cannot open " + *opts.labels_path);
    }
    const std::uint32_t lmagic = read_u32_be(lin);
    if (lmagic != kLabelsMagic) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "0x%08x", lmagic);
      throw std::runtime_error("IDX label magic mismatch in " +
                               *opts.labels_path + ": got " + buf +
                               ", expected 0x00000801");
    }
    const std::uint32_t lcount = read_u32_be(lin);
    if (lcount != count) {
      throw std::runtime_error("IDX label count does not match image count");
    }
    labels.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      char byte = 0;
      lin.read(&byte, 1);
      if (!lin) {
        throw std::runtime_error("unexpected end of IDX label file");
      }
      labels[i] = static_cast<unsigned char>(byte);
    }
  }

  const int n = opts.n_qubits.value_or(4);
  const Eigen::Index target_len = Eigen::Index{1} << n;
  Dataset ds;
  ds.n_qubits = n;
  ds.samples.reserve(count);
  std::vector<unsigned char> pixels(static_cast<size_t>(rows) * cols);
  for (std::uint32_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char *>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
    if (!in) {
      throw std::runtime_error("unexpected end of IDX image file");
    }
    Eigen::MatrixXd image(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) {
        image(r, c) = pixels[static_cast<size_t>(r) * cols + c] / 255.0;
      }
    }
    Sample s;
    s.raw = downsample_vector(image, target_len);
    s.normalized = normalize_to_state(s.raw, n);
    s.tag = path.filename().string();
    if (!labels.empty()) {
      s.label = labels[i];
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

} // namespace detail

inline Dataset load_vectors(const std::filesystem::path &path,
                            FileFormat format, const LoadOptions &opts = {}) {
  switch (format) {
  case FileFormat::CSV:
    return detail::load_csv(path, opts);
  case FileFormat::RAW_F64:
    return detail::load_raw_f64(path, opts);
  case FileFormat::IDX_IMAGES:
    return detail::load_idx_images(path, opts);
  }
  throw std::invalid_argument("load_vectors: unknown format");
}

/// Writes raw vectors in the RAW_F64 layout: u32-le count, u32-le dim,
/// then count*dim doubles little-endian.
inline void save_raw_f64(const std::filesystem::path &path,
                         const Dataset &ds) {
  if (ds.samples.empty()) {
    throw std::invalid_argument("save_raw_f64: empty dataset");
  }
  const Eigen::Index dim = ds.samples.front().raw.size();
  for (const Sample &s : ds.samples) {
    if (s.raw.size() != dim) {
      throw std::invalid_argument("save_raw_f64: ragged raw vectors");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  detail::write_u32_le(out, static_cast<std::uint32_t>(ds.samples.size()));
  detail::write_u32_le(out, static_cast<std::uint32_t>(dim));
  for (const Sample &s : ds.samples) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      detail::write_f64_le(out, s.raw[j]);
    }
  }
}

} // namespace qsprep
