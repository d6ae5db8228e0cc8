#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace cfs {

struct RunConfig {
  int alphabet = 2;
  int window = 3;
  int r_max = 25;
  std::string tol = "1/1000000000000";
  int threads = 1;
  std::string cache_dir;  // empty disables caching
  std::string output = "json";  // json|csv
  uint64_t state_budget = 5'000'000;

  void validate() const;
};

// Content-addressed result store: key is a pure function of the operation
// name, a canonical parameter string, and the schema version. Entries are
// self-describing JSON envelopes; a corrupted or mismatched entry is
// recomputed and overwritten with a warning.
class FileCache {
 public:
  static constexpr const char* kVersion = "cfspectra-cache-1";

  explicit FileCache(std::filesystem::path dir);

  std::string key_for(const std::string& op, const std::string& params) const;
  std::optional<std::string> get(const std::string& op,
                                 const std::string& params) const;
  void put(const std::string& op, const std::string& params,
           const std::string& payload) const;

  std::string get_or_compute(const std::string& op, const std::string& params,
                             const std::function<std::string()>& compute) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

uint64_t fnv1a64(std::string_view data);

}  // namespace cfs
