#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cogniview/parser.hpp"
#include "cogniview/source.hpp"

namespace cvtest {

inline std::filesystem::path corpus_dir() { return COGNIVIEW_CORPUS_DIR; }

/// Every seed program, sorted by file name.
inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
    if (entry.path().extension() == ".mpy") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::filesystem::path corpus_file(const std::string& name) { return corpus_dir() / name; }

inline cogniview::syntax::SourceUnit load(const std::filesystem::path& path) {
  return cogniview::syntax::SourceUnit::load(path);
}

inline cogniview::syntax::ModuleAst parse_file(const std::filesystem::path& path) {
  return cogniview::syntax::parse_source(load(path)).module;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("cogniview_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace cvtest
