#include <phitilde/golden.hpp>

#include <phitilde/errors.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phitilde {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

} // namespace

std::vector<GoldenLine> load_golden_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<GoldenLine> lines;
  std::string raw;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;

    const size_t bar = line.find('|');
    if (bar == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": missing '|' separator");
    }
    GoldenLine g;
    g.key = strip(line.substr(0, bar));
    if (g.key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty key");
    }
    std::string rest = strip(line.substr(bar + 1));
    if (!rest.empty()) {
      std::istringstream vs(rest);
      std::string item;
      while (std::getline(vs, item, ',')) {
        item = strip(item);
        try {
          size_t used = 0;
          g.values.push_back(std::stoull(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                   ": bad value '" + item + "'");
        }
      }
    }
    lines.push_back(std::move(g));
  }
  return lines;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t checksum_file(const std::string& path) {
  return fnv1a64(read_file(path));
}

std::string default_data_dir() {
  std::error_code ec;
  if (std::filesystem::is_directory("data", ec)) return "data";
#ifdef PHITILDE_DATA_DIR
  return PHITILDE_DATA_DIR;
#else
  throw ResourceError(
      "no ./data directory here and no build-time fallback configured");
#endif
}

} // namespace phitilde
