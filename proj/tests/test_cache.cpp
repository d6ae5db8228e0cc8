#include "cfs/cache.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace cfs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cfs-cache-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("RunConfig validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  RunConfig bad = cfg;
  bad.output = "xml";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.window = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.r_max = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("cache roundtrip and compute-once") {
  TempDir tmp;
  FileCache cache(tmp.path);
  int computed = 0;
  auto compute = [&] {
    ++computed;
    return std::string("payload-1");
  };
  CHECK(cache.get("op", "a=1") == std::nullopt);
  CHECK(cache.get_or_compute("op", "a=1", compute) == "payload-1");
  CHECK(computed == 1);
  CHECK(cache.get_or_compute("op", "a=1", compute) == "payload-1");
  CHECK(computed == 1);  // warm hit
  // different params miss
  CHECK(cache.get_or_compute("op", "a=2", compute) == "payload-1");
  CHECK(computed == 2);
}

TEST_CASE("cache keys canonicalize over op and params") {
  TempDir tmp;
  FileCache cache(tmp.path);
  CHECK(cache.key_for("op", "a=1") == cache.key_for("op", "a=1"));
  CHECK(cache.key_for("op", "a=1") != cache.key_for("op", "a=2"));
  CHECK(cache.key_for("op1", "a=1") != cache.key_for("op2", "a=1"));
}

TEST_CASE("corrupted entries are recomputed and overwritten") {
  TempDir tmp;
  FileCache cache(tmp.path);
  cache.put("op", "p", "good");
  auto file = tmp.path / (cache.key_for("op", "p") + ".json");
  {
    std::ofstream out(file);
    out << "{not json";
  }
  int computed = 0;
  auto value = cache.get_or_compute("op", "p", [&] {
    ++computed;
    return std::string("fresh");
  });
  CHECK(value == "fresh");
  CHECK(computed == 1);
  CHECK(cache.get("op", "p") == std::string("fresh"));
}

TEST_CASE("cleared cache regenerates identical payload") {
  TempDir tmp;
  FileCache cache(tmp.path);
  auto compute = [] { return std::string("deterministic"); };
  auto first = cache.get_or_compute("op", "p", compute);
  std::filesystem::remove_all(tmp.path);
  std::filesystem::create_directories(tmp.path);
  auto second = cache.get_or_compute("op", "p", compute);
  CHECK(first == second);
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") != fnv1a64("b"));
}

TEST_CASE("version bump invalidates old entries") {
  TempDir tmp;
  FileCache cache(tmp.path);
  cache.put("op", "p", "old-payload");
  auto file = tmp.path / (cache.key_for("op", "p") + ".json");
  // rewrite the envelope with a stale version string
  {
    std::ofstream out(file);
    out << "{\"version\": \"cfspectra-cache-0\", \"op\": \"op\", "
           "\"params\": \"p\", \"payload\": \"old-payload\"}\n";
  }
  CHECK(cache.get("op", "p") == std::nullopt);
}
