#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cycform/morphism.hpp"

namespace cycform {

struct BatteryCase {
  std::string name;
  MorphismInput input;
  long samples = 2'000'000;
  std::uint64_t seed = 42;
};

/// Parses a manifest of "[name]" sections holding "key = value" lines:
/// dim, xi (comma-separated constant vector fields), gamma (repeatable),
/// chain, samples, seed.
std::vector<BatteryCase> load_battery(const std::filesystem::path& path);

/// "default" names data/battery_default.txt; anything else is a path.
std::filesystem::path battery_path(const std::string& name);

}  // namespace cycform
