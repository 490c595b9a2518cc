#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phitilde {

// Reference values live in line-oriented data files, not in code:
//   key|comma-separated-values
// Blank lines and lines starting with # are skipped. An empty value part
// (`13|`) is a present key with an empty list. Files are checksummed in the
// test suite so silent edits fail loudly.

struct GoldenLine {
  std::string key;
  std::vector<uint64_t> values;
};

/// Parse one golden file. Throws std::runtime_error on malformed lines.
std::vector<GoldenLine> load_golden_file(const std::string& path);

/// FNV-1a 64-bit over a byte string.
uint64_t fnv1a64(const std::string& bytes);

/// FNV-1a 64-bit over a file's raw bytes.
uint64_t checksum_file(const std::string& path);

/// `data` under the current directory when present, else the build-time
/// fallback directory.
std::string default_data_dir();

} // namespace phitilde
