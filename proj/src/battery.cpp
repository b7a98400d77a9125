#include "cycform/battery.hpp"

#include <fstream>
#include <stdexcept>

#include "cycform/text.hpp"

namespace cycform {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawCase {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> fields;
};

BatteryCase build(const RawCase& raw, const std::string& where) {
  BatteryCase c;
  c.name = raw.name;
  std::string xi, chain;
  std::vector<std::string> gammas;
  int dim = 0;
  for (const auto& [key, value] : raw.fields) {
    if (key == "dim")
      dim = std::stoi(value);
    else if (key == "xi")
      xi = value;
    else if (key == "gamma")
      gammas.push_back(value);
    else if (key == "chain")
      chain = value;
    else if (key == "samples")
      c.samples = std::stol(value);
    else if (key == "seed")
      c.seed = std::stoull(value);
    else
      throw std::invalid_argument(where + ": unknown key '" + key + "' in case " + raw.name);
  }
  if (dim < 1) throw std::invalid_argument(where + ": case " + raw.name + " needs dim >= 1");
  if (chain.empty()) throw std::invalid_argument(where + ": case " + raw.name + " needs a chain");
  c.input.dim = dim;
  std::size_t start = 0;
  while (start < xi.size()) {
    std::size_t stop = xi.find(',', start);
    if (stop == std::string::npos) stop = xi.size();
    std::string factor = trim(xi.substr(start, stop - start));
    if (!factor.empty()) c.input.xi_factors.push_back(parse_polyvector(factor, dim));
    start = stop + 1;
  }
  for (const auto& g : gammas) c.input.gammas.push_back(parse_polyvector(g, dim));
  c.input.chain = parse_chain(chain, dim);
  c.input.validate();
  return c;
}

}  // namespace

std::vector<BatteryCase> load_battery(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read battery manifest " + path.string());
  std::vector<RawCase> raw;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": bad section");
      raw.push_back({trim(t.substr(1, t.size() - 2)), number, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || raw.empty())
      throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": expected key = value in a [case]");
    raw.back().fields.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  std::vector<BatteryCase> cases;
  for (const auto& r : raw) cases.push_back(build(r, path.string() + ":" + std::to_string(r.line)));
  return cases;
}

std::filesystem::path battery_path(const std::string& name) {
  if (name == "default") return std::filesystem::path(CYCFORM_DATA_DIR) / "battery_default.txt";
  return name;
}

}  // namespace cycform
