// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/mb01.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace scpls {
namespace {

constexpr char kMagic[4] = {'M', 'B', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void io_fail(const std::filesystem::path& path, const char* what) {
  throw std::runtime_error(std::string(what) + ": " + path.string());
}

}  // namespace

void write_mb01(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail(path, "cannot open for writing");
  out.write(kMagic, 4);
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      put_u64(out, std::bit_cast<std::uint64_t>(m(r, c)));
  if (!out) io_fail(path, "write failed");
}

Matrix read_mb01(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open for reading");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) io_fail(path, "not an MB01 file");
  const auto rows = static_cast<Eigen::Index>(get_u64(in));
  const auto cols = static_cast<Eigen::Index>(get_u64(in));
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = std::bit_cast<double>(get_u64(in));
  if (!in) io_fail(path, "truncated MB01 file");
  return m;
}

void write_mb01_vector(const std::filesystem::path& path, const Vector& v) {
  write_mb01(path, Matrix(v));
}

Vector read_mb01_vector(const std::filesystem::path& path) {
  const Matrix m = read_mb01(path);
  if (m.cols() != 1) io_fail(path, "expected a single-column MB01 file");
  return m.col(0);
}

void write_kv(const std::filesystem::path& path,
              const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  for (const auto& [key, value] : entries) out << key << "=" << value << "\n";
  if (!out) io_fail(path, "write failed");
}

std::map<std::string, std::string> read_kv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open for reading");
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) io_fail(path, "malformed key=value line");
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace scpls
