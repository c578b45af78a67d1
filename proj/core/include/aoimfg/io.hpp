#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aoimfg/model.hpp"

namespace aoimfg {

// 12 significant digits, plain "inf" for infinities. All numeric output in
// CSVs and on stdout goes through this so files are byte-stable.
std::string fmt_g(double v);
std::string fmt_g(Rate r);

// One CSV line from preformatted cells (no quoting: cells never contain
// commas or newlines here).
std::string csv_line(const std::vector<std::string>& cells);

// FNV-1a 64-bit content hash, used by experiment manifests.
uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace aoimfg
