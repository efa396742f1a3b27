#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace zakharov::cli {

/// Output directory of one invocation. Files are written into a hidden
/// staging directory that is renamed to <parent>/<subcommand>-<timestamp>
/// by commit(); an uncommitted run leaves nothing behind.
class RunDirectory {
 public:
  RunDirectory(const std::filesystem::path& parent, std::string subcommand);
  ~RunDirectory();
  RunDirectory(const RunDirectory&) = delete;
  RunDirectory& operator=(const RunDirectory&) = delete;

  std::filesystem::path file(const std::string& name);
  void write_text(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const Json& value);

  /// Writes config.json and manifest.json, then renames. Returns the final path.
  std::filesystem::path commit(const Json& config);

 private:
  std::filesystem::path parent_;
  std::filesystem::path staging_;
  std::string subcommand_;
  std::vector<std::string> artifacts_;
  bool committed_ = false;
};

}  // namespace zakharov::cli
