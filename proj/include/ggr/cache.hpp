#pragma once

// On-disk cache helpers: version-stamped keys, content hashing, atomic
// write-temp-then-rename.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace ggr {

/// Bumped whenever a cached artifact format or the algorithm producing it
/// changes; part of every cache key.
inline constexpr std::string_view kAlgorithmVersion = "ggr-cache-3";

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "GGR_CACHE_DIR";

std::uint64_t fnv1a(std::string_view data);
std::string fnv1a_hex(std::string_view data);

/// File name "<kind>-<hash>.json" where hash covers kind, algorithm version
/// and the descriptive key.
std::string cache_file_name(std::string_view kind, std::string_view key);

/// Directory from GGR_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> default_cache_dir();

std::optional<std::string> read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over path. Creates parent
/// directories. Errors are reported as ggr::Error.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace ggr
