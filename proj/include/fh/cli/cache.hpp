#pragma once

// On-disk cache for character tables (keyed by n) and block partition
// enumerations (keyed by a, b). Files start with a format-version line and
// are replaced atomically; unreadable or stale files are recomputed.

#include <filesystem>
#include <vector>

#include "fh/combinatorics.hpp"

namespace fh::cli {

inline constexpr int kCacheFormatVersion = 1;

// $FH_CACHE_DIR, or ".fhcache" when unset.
std::filesystem::path default_cache_dir();

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  CharacterTable character_table(int n);
  std::vector<BlockSetPartition> block_partitions(int a, int b, int max_ground = kDefaultBlockLimit);

  std::filesystem::path character_table_path(int n) const;
  std::filesystem::path block_partitions_path(int a, int b) const;

 private:
  std::filesystem::path dir_;
};

// Writes to a temporary sibling and renames it over the target.
void write_atomically(const std::filesystem::path& target, const std::string& contents);

}  // namespace fh::cli
