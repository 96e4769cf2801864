// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sdglab {

/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe a partially written file. Parent directories are
/// created. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace sdglab
