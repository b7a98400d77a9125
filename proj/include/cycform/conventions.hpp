#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace cycform {

/// The convention ledger: key = value lines with '#' comments.
class Conventions {
 public:
  static Conventions load(const std::filesystem::path& path);
  /// data/conventions.txt of the source tree.
  static Conventions load_default();
  static std::filesystem::path default_path();

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& text(const std::string& key) const;
  int integer(const std::string& key) const;
  /// (-1)^(parity(key) * exponent).
  int sign(const std::string& parity_key, long exponent) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace cycform
