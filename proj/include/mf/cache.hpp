#pragma once

// On-disk JSON cache. Entries are written to a temporary file and renamed
// into place, so concurrent readers never see a partial entry.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "mf/io.hpp"

namespace mf {

class Cache {
 public:
  Cache() = default;  // disabled
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// MF_CACHE_DIR, else $XDG_CACHE_HOME/mfquiver, else ~/.cache/mfquiver.
  static std::filesystem::path default_dir() {
    if (const char* env = std::getenv("MF_CACHE_DIR"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "mfquiver";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "mfquiver";
    return std::filesystem::temp_directory_path() / "mfquiver";
  }

  bool enabled() const { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& dir() const { return dir_; }

  std::optional<Json> load(const std::string& key) const {
    if (!dir_) return std::nullopt;
    std::ifstream in(*dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      return Json::parse(in);
    } catch (const Json::exception&) {
      return std::nullopt;  // a corrupt entry is treated as a miss and overwritten
    }
  }

  void store(const std::string& key, const Json& value) const {
    if (!dir_) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) return;
    const auto target = *dir_ / (key + ".json");
    const auto tmp = *dir_ / (key + ".json.tmp." + std::to_string(::getpid()));
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) return;
      out << value.dump();
      if (!out) return;
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  std::optional<std::filesystem::path> dir_;
};

inline std::string cache_key(const std::string& kind, const std::string& fingerprint, std::uint64_t p, std::uint64_t m,
                             std::uint64_t N, int D) {
  std::ostringstream s;
  s << kind << "-" << fingerprint << "-p" << p << "-m" << m << "-N" << N << "-D" << D;
  return s.str();
}

}  // namespace mf
