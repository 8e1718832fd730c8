#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace ragbench {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Lowercase hex SHA-256 of a file's contents. Throws UserError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Reads a whole file as bytes. Throws UserError if unreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes bytes, replacing the file. Throws Error on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace ragbench
