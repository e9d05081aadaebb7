#pragma once

#include <filesystem>
#include <random>
#include <optional>
#include <string>

#include "gcjstyle/error.hpp"

namespace testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("gcjstyle_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Code of the gcjstyle::Error thrown by f, or nullopt if none is thrown.
template <typename F>
std::optional<gcjstyle::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const gcjstyle::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
