#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dta::io {

std::string read_file(const std::filesystem::path& path);

/// Writes via a temp file in the same directory plus rename, so an
/// interrupted run never leaves a truncated artifact behind.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string sha256_hex(const std::string& bytes);

/// Splits one line on single tab characters. Does not trim fields.
std::vector<std::string> split_tsv(const std::string& line);

/// Strips a trailing '\r' (tolerates CRLF input files).
std::string strip_cr(std::string line);

bool parse_double(const std::string& s, double& out);

}  // namespace dta::io
