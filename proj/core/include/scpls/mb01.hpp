// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "scpls/problem.hpp"

namespace scpls {

// MB01 container: magic "MB01", u64 rows, u64 cols, then row-major IEEE-754
// doubles. Everything little-endian regardless of host order. Vectors are
// stored with cols = 1.

void write_mb01(const std::filesystem::path& path, const Matrix& m);
Matrix read_mb01(const std::filesystem::path& path);

void write_mb01_vector(const std::filesystem::path& path, const Vector& v);
Vector read_mb01_vector(const std::filesystem::path& path);

// Sidecar metadata and summaries use plain key=value lines.
void write_kv(const std::filesystem::path& path,
              const std::vector<std::pair<std::string, std::string>>& entries);
std::map<std::string, std::string> read_kv(const std::filesystem::path& path);

/// 17 significant digits; parses back to exactly the same double.
std::string format_double(double v);

}  // namespace scpls
