#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cycform/configspace.hpp"

namespace cycform {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Append-only store of weight estimates. Records are tab-separated lines
///   encoding  method  samples  seed  value  stderr  timestamp
/// with shortest round-trip decimal numbers. Without a path it lives in memory.
class WeightCache {
 public:
  struct Stats {
    long hits = 0;
    long misses = 0;
  };

  WeightCache() = default;
  /// Loads an existing file (a missing file is an empty cache).
  explicit WeightCache(std::filesystem::path path);

  WeightEstimate get_or_compute(const ShoikhetGraph& g, const IntegrationSpec& spec);
  std::optional<WeightEstimate> lookup(const ShoikhetGraph& g, const IntegrationSpec& spec) const;

  Stats stats() const;
  std::size_t size() const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

  /// Default location from CYCFORM_CACHE, if set.
  static std::optional<std::filesystem::path> default_path();

  static std::string format_record(const WeightEstimate& e, const std::string& timestamp);
  /// Throws CacheError naming `line_number` on malformed input.
  static WeightEstimate parse_record(const std::string& line, long line_number);

 private:
  using Key = std::tuple<std::string, std::string, long, std::uint64_t>;
  static Key key_for(const ShoikhetGraph& g, const IntegrationSpec& spec);
  void append(const WeightEstimate& e);

  std::optional<std::filesystem::path> path_;
  mutable std::mutex mutex_;
  std::map<Key, WeightEstimate> entries_;
  mutable Stats stats_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

}  // namespace cycform
