#include "run_dir.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <boost/version.hpp>
#include <fftw3.h>
#include <unistd.h>

#include "zakharov/parallel.hpp"

namespace zakharov::cli {

namespace fs = std::filesystem;

namespace {

std::string utc_stamp(const char* format) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, format, &tm);
  return buf;
}

}  // namespace

RunDirectory::RunDirectory(const fs::path& parent, std::string subcommand)
    : parent_(parent), subcommand_(std::move(subcommand)) {
  fs::create_directories(parent_);
  staging_ = parent_ / (".staging-" + subcommand_ + "-" + std::to_string(::getpid()));
  fs::remove_all(staging_);
  fs::create_directory(staging_);
}

RunDirectory::~RunDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

fs::path RunDirectory::file(const std::string& name) {
  if (std::find(artifacts_.begin(), artifacts_.end(), name) == artifacts_.end()) artifacts_.push_back(name);
  return staging_ / name;
}

void RunDirectory::write_text(const std::string& name, const std::string& content) {
  std::ofstream out(file(name), std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + name);
}

void RunDirectory::write_json(const std::string& name, const Json& value) {
  write_text(name, value.dump(2) + "\n");
}

fs::path RunDirectory::commit(const Json& config) {
  write_json("config.json", config);
  Json manifest = Json::object();
  manifest["program"] = "zakharov";
  manifest["version"] = ZAKHAROV_VERSION;
  manifest["subcommand"] = subcommand_;
  manifest["created_utc"] = utc_stamp("%Y-%m-%dT%H:%M:%SZ");
  Json libraries = Json::object();
  libraries["fftw"] = std::string(fftw_version);
  libraries["boost"] = std::string(BOOST_LIB_VERSION);
  libraries["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  manifest["libraries"] = libraries;
  manifest["threads"] = worker_count();
  Json files = Json::array();
  for (const std::string& a : artifacts_) {
    files.push_back({{"file", a}, {"bytes", fs::file_size(staging_ / a)}});
  }
  manifest["artifacts"] = files;
  {
    std::ofstream out(staging_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
  }

  const std::string base = subcommand_ + "-" + utc_stamp("%Y%m%d-%H%M%S");
  fs::path target = parent_ / base;
  for (int i = 2; fs::exists(target); ++i) target = parent_ / (base + "-" + std::to_string(i));
  fs::rename(staging_, target);
  committed_ = true;
  return target;
}

}  // namespace zakharov::cli
