#include "cycform/weight_cache.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <vector>

namespace cycform {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad number '" + s + "'");
  return x;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

long requested_samples(const IntegrationSpec& spec) {
  return spec.method == Method::monte_carlo ? spec.samples : spec.quadrature_nodes;
}

}  // namespace

WeightCache::WeightCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  if (!in) {
    if (std::filesystem::exists(*path_)) throw CacheError("cannot read weight cache " + path_->string());
    return;
  }
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    WeightEstimate e = parse_record(line, number);
    entries_[Key{e.graph, e.method, e.samples, e.seed}] = e;
  }
}

std::optional<std::filesystem::path> WeightCache::default_path() {
  if (const char* p = std::getenv("CYCFORM_CACHE"); p && *p) return std::filesystem::path(p);
  return std::nullopt;
}

WeightCache::Key WeightCache::key_for(const ShoikhetGraph& g, const IntegrationSpec& spec) {
  return Key{g.encode(), spec.method_tag(), requested_samples(spec), spec.seed};
}

std::optional<WeightEstimate> WeightCache::lookup(const ShoikhetGraph& g, const IntegrationSpec& spec) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key_for(g, spec));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

WeightEstimate WeightCache::get_or_compute(const ShoikhetGraph& g, const IntegrationSpec& spec) {
  if (structurally_zero(g, spec.slice)) return compute_weight(g, spec);
  const Key key = key_for(g, spec);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      ++stats_.hits;
      return it->second;
    }
  }
  WeightEstimate e = compute_weight(g, spec);
  e.samples = requested_samples(spec);
  e.rejected = 0;  // not persisted; keep fresh and cached results identical
  std::lock_guard lock(mutex_);
  ++stats_.misses;
  if (entries_.emplace(key, e).second) append(e);
  return e;
}

void WeightCache::append(const WeightEstimate& e) {
  if (!path_) return;
  std::ofstream out(*path_, std::ios::app);
  if (!out) throw CacheError("cannot write weight cache " + path_->string());
  out << format_record(e, utc_timestamp()) << '\n';
  if (!out) throw CacheError("write to weight cache " + path_->string() + " failed");
}

WeightCache::Stats WeightCache::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

std::size_t WeightCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::string WeightCache::format_record(const WeightEstimate& e, const std::string& timestamp) {
  return e.graph + '\t' + e.method + '\t' + std::to_string(e.samples) + '\t' + std::to_string(e.seed) + '\t' +
         format_double(e.value) + '\t' + format_double(e.stderr_) + '\t' + timestamp;
}

WeightEstimate WeightCache::parse_record(const std::string& line, long line_number) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) fields.push_back(field);
  auto fail = [&](const std::string& why) -> CacheError {
    return CacheError("weight cache line " + std::to_string(line_number) + ": " + why);
  };
  if (fields.size() != 7) throw fail("expected 7 tab-separated fields, found " + std::to_string(fields.size()));
  WeightEstimate e;
  try {
    e.graph = ShoikhetGraph::decode(fields[0]).encode();
    e.method = fields[1];
    std::size_t used = 0;
    e.samples = std::stol(fields[2], &used);
    if (used != fields[2].size()) throw std::invalid_argument("samples");
    e.seed = std::stoull(fields[3], &used);
    if (used != fields[3].size()) throw std::invalid_argument("seed");
    e.value = parse_double(fields[4]);
    e.stderr_ = parse_double(fields[5]);
  } catch (const std::exception& ex) {
    throw fail(std::string("malformed record (") + ex.what() + ")");
  }
  if (fields[1].empty()) throw fail("empty method tag");
  return e;
}

}  // namespace cycform
