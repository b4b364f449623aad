#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "capcert/certificate.hpp"
#include "capcert/geometry.hpp"

namespace capcert {

using Json = nlohmann::json;

inline constexpr char kPointMagic[4] = {'C', 'A', 'P', 'F'};
inline constexpr std::uint16_t kPointFormatVersion = 1;

struct PointFile {
  std::size_t dim = 0;
  std::vector<Vec> rows;
  std::string metadata;  // JSON text; empty when absent
};

namespace detail {

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b)
    out.push_back(static_cast<char>((value >> (8 * b)) & 0xff));
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw error("point file truncated");
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b)
    value |= static_cast<T>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
  pos += sizeof(T);
  return value;
}

}  // namespace detail

/// Point-set container: magic "CAPF", u16 version, u32 dim, u64 count,
/// count x dim little-endian IEEE doubles row-major, then an optional
/// u32-length-prefixed JSON metadata trailer. Bit-exact round trips.
inline std::string encode_points(std::size_t dim, const std::vector<Vec>& rows,
                                 const std::string& metadata = "") {
  std::string out;
  out.append(kPointMagic, 4);
  detail::put_le<std::uint16_t>(out, kPointFormatVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  detail::put_le<std::uint64_t>(out, static_cast<std::uint64_t>(rows.size()));
  for (const Vec& row : rows) {
    if (row.size() != dim) throw dimension_mismatch("row width differs from header dim");
    for (const double x : row)
      detail::put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(x));
  }
  if (!metadata.empty()) {
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(metadata.size()));
    out += metadata;
  }
  return out;
}

inline PointFile decode_points(const std::string& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kPointMagic, 4) != 0)
    throw error("not a point file (bad magic)");
  pos = 4;
  const auto version = detail::get_le<std::uint16_t>(bytes, pos);
  if (version != kPointFormatVersion)
    throw error("unsupported point file version " + std::to_string(version));
  PointFile file;
  file.dim = detail::get_le<std::uint32_t>(bytes, pos);
  const auto count = detail::get_le<std::uint64_t>(bytes, pos);
  file.rows.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    Vec row(file.dim);
    for (std::size_t k = 0; k < file.dim; ++k)
      row[k] = std::bit_cast<double>(detail::get_le<std::uint64_t>(bytes, pos));
    file.rows.push_back(std::move(row));
  }
  if (pos < bytes.size()) {
    const auto len = detail::get_le<std::uint32_t>(bytes, pos);
    if (pos + len > bytes.size()) throw error("point file truncated");
    file.metadata = bytes.substr(pos, len);
    pos += len;
  }
  if (pos != bytes.size()) throw error("trailing bytes in point file");
  return file;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw error("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

inline void write_points(const std::string& path, std::size_t dim,
                         const std::vector<Vec>& rows,
                         const std::string& metadata = "") {
  write_file(path, encode_points(dim, rows, metadata));
}

inline PointFile read_points(const std::string& path) {
  return decode_points(read_file(path));
}

inline std::vector<Vec> to_rows(const std::vector<UnitVector>& points) {
  std::vector<Vec> rows;
  rows.reserve(points.size());
  for (const UnitVector& p : points) rows.push_back(p.coords());
  return rows;
}

inline std::vector<UnitVector> to_unit_vectors(const std::vector<Vec>& rows) {
  std::vector<UnitVector> points;
  points.reserve(rows.size());
  for (const Vec& row : rows) points.emplace_back(row);
  return points;
}

inline Json json_from_certificate(const CoverCertificate& cert) {
  Json j;
  j["universe_size"] = cert.universe_size;
  j["lower_bound"] = cert.lower_bound;
  j["upper_bound"] = cert.upper_bound;
  j["lb_method"] = cert.lb_method;
  j["ub_method"] = cert.ub_method;
  j["parameters"] = cert.parameters;
  return j;
}

}  // namespace capcert
