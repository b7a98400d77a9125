#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cycform/weight_cache.hpp"

using namespace cycform;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cycform_cache_tests";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

IntegrationSpec spec(long samples) {
  IntegrationSpec s;
  s.samples = samples;
  s.threads = 1;
  return s;
}

}  // namespace

TEST_CASE("numbers round trip exactly") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, -2.5e17, 0.1})
    CHECK(parse_double(format_double(x)) == x);
  CHECK_THROWS(parse_double("1.0x"));
  CHECK_THROWS(parse_double(""));
}

TEST_CASE("records round trip") {
  WeightEstimate e;
  e.graph = "1,2;0>1,0>2b|1>1b,1>2b";
  e.method = "mc-polar:j0:coherent";
  e.samples = 1000;
  e.seed = 99;
  e.value = -0.0123456789012345;
  e.stderr_ = 3.3e-4;
  const WeightEstimate back = WeightCache::parse_record(WeightCache::format_record(e, "2026-01-01T00:00:00Z"), 1);
  CHECK(back.graph == e.graph);
  CHECK(back.method == e.method);
  CHECK(back.samples == e.samples);
  CHECK(back.seed == e.seed);
  CHECK(back.value == e.value);
  CHECK(back.stderr_ == e.stderr_);
}

TEST_CASE("cached and fresh estimates are identical, and persist") {
  const auto path = scratch("persist.tsv");
  const ShoikhetGraph g = ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>2b");
  WeightEstimate first;
  {
    WeightCache cache(path);
    first = cache.get_or_compute(g, spec(5000));
    const WeightEstimate again = cache.get_or_compute(g, spec(5000));
    CHECK(again.value == first.value);
    CHECK(cache.stats().hits == 1);
    CHECK(cache.stats().misses == 1);
    cache.get_or_compute(g, spec(6000));
    CHECK(cache.size() == 2);
  }
  WeightCache reopened(path);
  CHECK(reopened.size() == 2);
  const auto hit = reopened.lookup(g, spec(5000));
  REQUIRE(hit.has_value());
  CHECK(hit->value == first.value);
  CHECK(hit->stderr_ == first.stderr_);
  CHECK(reopened.get_or_compute(g, spec(5000)).value == first.value);
  CHECK(reopened.stats().misses == 0);
  // structural zeros never touch the store
  reopened.get_or_compute(ShoikhetGraph::decode("0,2;0>0b,0>1b"), spec(5000));
  CHECK(reopened.size() == 2);
}

TEST_CASE("corrupt lines are reported with their line number") {
  const auto path = scratch("corrupt.tsv");
  {
    std::ofstream out(path);
    out << "# comment\n\n";
    out << "0,2;0>1b,0>2b\tmc-polar:j0:coherent\t100\t42\t0.25\t0\t2026-01-01T00:00:00Z\n";
    out << "0,2;0>1b,0>2b\tmc-polar:j0:coherent\t100\t42\tnot-a-number\t0\tx\n";
  }
  try {
    WeightCache cache(path);
    FAIL("expected CacheError");
  } catch (const CacheError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  {
    std::ofstream out(path);
    out << "0,2;0>1b\tmc\t1\n";
  }
  CHECK_THROWS_AS(WeightCache{path}, CacheError);
  {
    std::ofstream out(path);
    out << "9,x;\tmc\t1\t1\t0\t0\tt\n";
  }
  CHECK_THROWS_AS(WeightCache{path}, CacheError);
}

TEST_CASE("unwritable cache location is an error") {
  const auto dir = std::filesystem::temp_directory_path() / "cycform_cache_tests" / "a_directory";
  std::filesystem::create_directories(dir);
  CHECK_THROWS_AS(
      {
        WeightCache cache(dir);
        cache.get_or_compute(ShoikhetGraph::decode("0,2;0>1b,0>2b"), spec(100));
      },
      CacheError);
}
