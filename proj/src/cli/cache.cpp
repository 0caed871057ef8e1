#include "fh/cli/cache.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "fh/errors.hpp"

namespace fh::cli {

namespace fs = std::filesystem;

fs::path default_cache_dir() {
  const char* env = std::getenv("FH_CACHE_DIR");
  return (env && *env) ? fs::path(env) : fs::path(".fhcache");
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::character_table_path(int n) const { return dir_ / ("chartable-" + std::to_string(n) + ".txt"); }

fs::path Cache::block_partitions_path(int a, int b) const {
  return dir_ / ("blocks-" + std::to_string(a) + "x" + std::to_string(b) + ".txt");
}

void write_atomically(const fs::path& target, const std::string& contents) {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // an unwritable cache only costs recomputation
    out << contents;
    if (!out.flush()) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

namespace {

std::string header(const std::string& kind, const std::string& key) {
  return "FHCACHE " + std::to_string(kCacheFormatVersion) + " " + kind + " " + key;
}

std::string serialize(const CharacterTable& table) {
  std::ostringstream out;
  out << header("chartable", std::to_string(table.n)) << '\n';
  for (std::size_t l = 0; l < table.partitions.size(); ++l) {
    out << table.partitions[l].to_string();
    for (const BigInt& v : table.values[l]) out << ' ' << v.get_str();
    out << '\n';
  }
  return out.str();
}

std::optional<CharacterTable> load_table(const fs::path& path, int n) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != header("chartable", std::to_string(n))) return std::nullopt;
  CharacterTable table;
  table.n = n;
  table.partitions = partitions_of(n);
  for (const Partition& lambda : table.partitions) {
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream row(line);
    std::string name;
    row >> name;
    if (name != lambda.to_string()) return std::nullopt;
    std::vector<BigInt> values;
    std::string v;
    while (row >> v) {
      BigInt x;
      if (x.set_str(v, 10) != 0) return std::nullopt;
      values.push_back(x);
    }
    if (values.size() != table.partitions.size()) return std::nullopt;
    table.values.push_back(std::move(values));
  }
  return table;
}

std::string serialize(const std::vector<BlockSetPartition>& partitions, int a, int b) {
  static const char* digits = "0123456789abcdef";
  std::ostringstream out;
  out << header("blocks", std::to_string(a) + "x" + std::to_string(b)) << ' ' << partitions.size() << '\n';
  for (const auto& p : partitions) {
    std::string s;
    for (auto label : p.labels()) s += digits[label];
    out << s << '\n';
  }
  return out.str();
}

std::optional<std::vector<BlockSetPartition>> load_blocks(const fs::path& path, int a, int b) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  const BigInt count = block_partition_count(a, b);
  if (!std::getline(in, line) || line != header("blocks", std::to_string(a) + "x" + std::to_string(b)) + " " +
                                             count.get_str())
    return std::nullopt;
  std::vector<BlockSetPartition> out;
  out.reserve(count.get_ui());
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (static_cast<int>(line.size()) != a * b) return std::nullopt;
    labels.clear();
    for (char c : line) {
      const int v = (c >= '0' && c <= '9') ? c - '0' : (c >= 'a' && c <= 'f') ? c - 'a' + 10 : -1;
      if (v < 0 || v >= a) return std::nullopt;
      labels.push_back(v);
    }
    try {
      out.push_back(BlockSetPartition::from_labels(labels));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (out.back().block_size() != b) return std::nullopt;
    if (out.size() > 1 && !(out[out.size() - 2] < out.back())) return std::nullopt;
  }
  if (BigInt(static_cast<unsigned long>(out.size())) != count) return std::nullopt;
  return out;
}

}  // namespace

CharacterTable Cache::character_table(int n) {
  const fs::path path = character_table_path(n);
  if (auto cached = load_table(path, n)) return *cached;
  CharacterTable table = fh::character_table(n);
  write_atomically(path, serialize(table));
  return table;
}

std::vector<BlockSetPartition> Cache::block_partitions(int a, int b, int max_ground) {
  if (a < 1 || b < 1) throw ArgumentError("block partitions: a and b must be positive");
  if (a * b > max_ground) throw ResourceError("block partitions: ab exceeds the limit");
  const fs::path path = block_partitions_path(a, b);
  if (auto cached = load_blocks(path, a, b)) return *cached;
  auto partitions = enumerate_block_partitions(a, b, max_ground);
  write_atomically(path, serialize(partitions, a, b));
  return partitions;
}

}  // namespace fh::cli
