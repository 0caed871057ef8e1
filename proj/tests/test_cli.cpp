#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fh/cli/cache.hpp"
#include "fh/cli/claims.hpp"
#include "fh/cli/commands.hpp"
#include "fh/fhm1.hpp"
#include "fh/foulkes_map.hpp"

using namespace fh;
using namespace fh::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome fhm(std::vector<std::string> args) {
  args.insert(args.begin(), "fhm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fh-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
    ::setenv("FH_CACHE_DIR", (path / "cache").c_str(), 1);
  }
  ~TempDir() { fs::remove_all(path); }
};

nlohmann::json mathematical(nlohmann::json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("psi command") {
  TempDir tmp;
  Outcome r = fhm({"psi", "--a", "1", "--b", "5"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["schema"] == "fhm-result/1");
  CHECK(r.json()["outputs"]["rank"] == 1);
  CHECK(r.json()["outputs"]["injective"] == true);

  const std::string path = (tmp.path / "psi22.fhm1").string();
  r = fhm({"psi", "--a", "2", "--b", "2", "--certify", "--export", path});
  CHECK(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["outputs"]["domain_dim"] == 3);
  CHECK(j["outputs"]["codomain_dim"] == 3);
  CHECK(j["outputs"]["rank"] == 3);
  CHECK(j["outputs"]["injective"] == true);
  CHECK(j["outputs"]["exact_rank"] == 3);
  CHECK(j["artifacts"][0]["path"] == path);
  std::ifstream in(path);
  CHECK(read_fhm1(in).matrix == psi_composed(2, 2).matrix);

  r = fhm({"psi", "--a", "2", "--b", "3", "--fused"});
  CHECK(r.json()["outputs"]["rank"] == 10);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(fhm({}).code == kExitUsage);
  CHECK(fhm({"psi", "--a", "2"}).code == kExitUsage);
  CHECK(fhm({"psi", "--a", "x", "--b", "2"}).code == kExitUsage);
  CHECK(fhm({"psi", "--a", "0", "--b", "2"}).code == kExitUsage);
  CHECK(fhm({"verify", "--claims", "nonsense", "--max-ab", "4"}).code == kExitUsage);
  CHECK(fhm({"mult", "--a", "2", "--b", "2", "--lambda", "3,2"}).code == kExitUsage);
  CHECK(fhm({"foulkes", "--a", "3", "--b", "2"}).code == kExitUsage);
  CHECK(fhm({"--help"}).code == kExitOk);
  const Outcome big = fhm({"psi", "--a", "3", "--b", "5"});
  CHECK(big.code == kExitResource);
  CHECK(big.json()["status"] == "resource_limit");
  CHECK(fhm({"psi", "--a", "3", "--b", "3", "--limit", "8"}).code == kExitResource);
  CHECK(fhm({"mult", "--a", "2", "--b", "7"}).code == kExitResource);
}

TEST_CASE("multiplicity commands") {
  TempDir tmp;
  Outcome r = fhm({"mult", "--a", "3", "--b", "2", "--lambda", "2,2,2"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["outputs"]["rows"][0]["multiplicity"] == 1);
  r = fhm({"foulkes", "--a", "2", "--b", "2"});
  CHECK(r.code == kExitOk);
  for (const auto& row : r.json()["outputs"]["rows"]) CHECK(row["left"] == row["right"]);
  r = fhm({"hermite", "--a", "2", "--b", "4", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "lambda,left,right,ok\n\"8\",1,1,true\n\"7,1\",0,0,true\n\"6,2\",1,1,true\n\"5,3\",0,0,true\n\"4,4\",1,1,true\n");
  r = fhm({"foulkes", "--a", "2", "--b", "3", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"2,2,2\",0,1,true") != std::string::npos);
  CHECK(fs::exists(tmp.path / "cache" / "chartable-6.txt"));
}

TEST_CASE("verify command") {
  TempDir tmp;
  Outcome r = fhm({"verify", "--claims", "all", "--max-ab", "6"});
  CHECK(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["outputs"]["all_passed"] == true);
  CHECK(j["outputs"]["claims"].size() == 7);
  r = fhm({"verify", "--claims", "zeta", "--max-ab", "12"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("zeta: pass") != std::string::npos);
}

TEST_CASE("repeated runs agree on mathematical fields") {
  TempDir tmp;
  const Outcome first = fhm({"foulkes", "--a", "2", "--b", "4"});
  const Outcome second = fhm({"foulkes", "--a", "2", "--b", "4"});  // served from the cache
  CHECK(mathematical(first.json()) == mathematical(second.json()));
  const Outcome p1 = fhm({"psi", "--a", "2", "--b", "3", "--certify"});
  const Outcome p2 = fhm({"psi", "--a", "2", "--b", "3", "--certify"});
  CHECK(mathematical(p1.json()) == mathematical(p2.json()));
}

TEST_CASE("cache files") {
  TempDir tmp;
  Cache cache(default_cache_dir());
  CHECK(cache.dir() == tmp.path / "cache");
  const CharacterTable fresh = cache.character_table(6);
  const fs::path table = cache.character_table_path(6);
  REQUIRE(fs::exists(table));
  std::ifstream in(table);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("FHCACHE 1 chartable 6", 0) == 0);
  CHECK(cache.character_table(6).values == fresh.values);

  const auto blocks = cache.block_partitions(2, 3);
  CHECK(blocks == enumerate_block_partitions(2, 3));
  CHECK(cache.block_partitions(2, 3) == blocks);

  // Corrupt and stale files are recomputed and rewritten.
  write_atomically(table, "garbage\n");
  CHECK(cache.character_table(6).values == fresh.values);
  write_atomically(cache.block_partitions_path(2, 3), "FHCACHE 0 blocks 2x3 10\n");
  CHECK(cache.block_partitions(2, 3) == blocks);
  std::ifstream again(cache.block_partitions_path(2, 3));
  std::getline(again, header);
  CHECK(header.rfind("FHCACHE 1 blocks 2x3", 0) == 0);
  for (const auto& entry : fs::directory_iterator(cache.dir()))
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("claim suites") {
  CHECK(factor_shapes(6) == std::vector<Shape>{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}});
  CHECK(verify_commute(4, 4).passed);
  CHECK(verify_equivariance(4, 4).passed);
  CHECK(verify_wedge(6).passed);
  CHECK(verify_zeta(factor_shapes(12)).passed);
  const ClaimResult split = verify_qsplit({{2, 3}});
  CHECK(split.passed);
  CHECK(split.checks == 3);
}
