#include "cycform/conventions.hpp"

#include <fstream>
#include <stdexcept>

namespace cycform {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Conventions Conventions::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read convention ledger " + path.string());
  Conventions c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": expected key = value");
    c.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return c;
}

std::filesystem::path Conventions::default_path() {
  return std::filesystem::path(CYCFORM_DATA_DIR) / "conventions.txt";
}

Conventions Conventions::load_default() { return load(default_path()); }

const std::string& Conventions::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("convention '" + key + "' not in the ledger");
  return it->second;
}

int Conventions::integer(const std::string& key) const {
  const std::string& v = text(key);
  std::size_t used = 0;
  int x = std::stoi(v, &used);
  if (used != v.size()) throw std::invalid_argument("convention '" + key + "' is not an integer");
  return x;
}

int Conventions::sign(const std::string& parity_key, long exponent) const {
  const long p = integer(parity_key) * exponent;
  return p % 2 == 0 ? 1 : -1;
}

}  // namespace cycform
