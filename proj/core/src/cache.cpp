#include "cfs/cache.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace cfs {

using json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (alphabet < 1) throw std::invalid_argument("N must be positive");
  if (window < 1) throw std::invalid_argument("window must be positive");
  if (r_max < 4) throw std::invalid_argument("rmax must be >= 4");
  if (threads < 1) throw std::invalid_argument("threads must be positive");
  if (state_budget < 1) throw std::invalid_argument("budget must be positive");
  if (output != "json" && output != "csv")
    throw std::invalid_argument("output must be json or csv");
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

FileCache::FileCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string FileCache::key_for(const std::string& op,
                               const std::string& params) const {
  std::string material = std::string(kVersion) + "\n" + op + "\n" + params;
  std::ostringstream os;
  os << op << "-" << std::hex << fnv1a64(material);
  return os.str();
}

std::optional<std::string> FileCache::get(const std::string& op,
                                          const std::string& params) const {
  auto path = dir_ / (key_for(op, params) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    json j = json::parse(buf.str());
    if (j.at("version").get<std::string>() != kVersion) return std::nullopt;
    if (j.at("op").get<std::string>() != op) return std::nullopt;
    if (j.at("params").get<std::string>() != params) return std::nullopt;
    return j.at("payload").get<std::string>();
  } catch (const std::exception& e) {
    std::cerr << "warning: corrupted cache entry " << path.string()
              << " (" << e.what() << "), recomputing\n";
    return std::nullopt;
  }
}

void FileCache::put(const std::string& op, const std::string& params,
                    const std::string& payload) const {
  json j;
  j["version"] = kVersion;
  j["op"] = op;
  j["params"] = params;
  j["payload"] = payload;
  auto path = dir_ / (key_for(op, params) + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache dir not writable: " + dir_.string());
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::string FileCache::get_or_compute(
    const std::string& op, const std::string& params,
    const std::function<std::string()>& compute) const {
  if (auto hit = get(op, params)) return *hit;
  std::string payload = compute();
  put(op, params, payload);
  return payload;
}

}  // namespace cfs
