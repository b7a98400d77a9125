#include "doctest.h"

#include <random>
#include <set>

#include "cycform/graph.hpp"

using namespace cycform;

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Random loop-free graph, stars in random order, possibly with parallel edges.
ShoikhetGraph random_graph(std::mt19937_64& rng) {
  const int n = static_cast<int>(rng() % 3), m = static_cast<int>(rng() % 5);
  std::vector<std::vector<Vertex>> stars(static_cast<std::size_t>(n + 1));
  for (int v = 0; v <= n; ++v) {
    const int deg = static_cast<int>(rng() % 4);
    for (int e = 0; e < deg; ++e) {
      Vertex t = Vertex::boundary(static_cast<int>(rng() % static_cast<unsigned>(m + 1)));
      if (n > 0 && rng() % 2) {
        const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        if (a != v) t = Vertex::aerial(a);
      }
      stars[static_cast<std::size_t>(v)].push_back(t);
    }
  }
  return ShoikhetGraph(n, m, stars);
}

}  // namespace

TEST_CASE("encoding round trip over random graphs") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const ShoikhetGraph g = random_graph(rng);
    const std::string enc = g.encode();
    CHECK(ShoikhetGraph::decode(enc) == g);
    CHECK(ShoikhetGraph::decode(enc).encode() == enc);
  }
}

TEST_CASE("decoding known encodings") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,2;0>1,0>2b|1>1b,1>2b");
  CHECK(g.aerial_count() == 1);
  CHECK(g.boundary_last() == 2);
  CHECK(g.edge_count() == 4);
  CHECK(g.configuration_dimension() == 4);
  CHECK(g.central_star() == std::vector<Vertex>{Vertex::aerial(1), Vertex::boundary(2)});
  CHECK(signature(g).degree_matches());
  CHECK(star_factorial(g) == 4);
}

TEST_CASE("malformed encodings are rejected") {
  for (const char* bad : {"", "0,2", "a,2;0>1b", "0,2;0>0", "1,2;1>1", "0,2;0>3b", "0,2;0-1b", "0,2;3>1b", "1,1;0>2"})
    CHECK_THROWS_AS(ShoikhetGraph::decode(bad), GraphFormatError);
}

TEST_CASE("cyclic shift has order m and inverts") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const ShoikhetGraph g = random_graph(rng);
    const int m = g.boundary_last();
    if (m == 0) continue;
    CHECK(shift_graph(g, m) == g);
    CHECK(shift_graph(shift_graph(g, 1), -1) == g);
    CHECK(shift_graph(g, 2) == shift_graph(shift_graph(g)));
  }
  const ShoikhetGraph g = ShoikhetGraph::decode("0,3;0>1b,0>3b");
  CHECK(shift_graph(g).encode() == "0,3;0>2b,0>1b");
}

TEST_CASE("enumeration count matches the binomial product") {
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 3; ++m)
      for (int k = 0; k <= 3; ++k) {
        std::vector<int> degs(static_cast<std::size_t>(n), 2);
        const auto graphs = enumerate_graphs(n, m, k, degs);
        long expected = binomial(n + m + 1, k);
        for (int v = 1; v <= n; ++v) expected *= binomial(n + m, 2);
        CHECK(static_cast<long>(graphs.size()) == expected);
        std::set<std::string> seen;
        for (const auto& g : graphs) {
          CHECK_FALSE(g.has_parallel_edges());
          const auto [c, sign] = canonicalize(g);
          CHECK(c == g);
          CHECK(sign == 1);
          seen.insert(g.encode());
        }
        CHECK(seen.size() == graphs.size());
      }
}

TEST_CASE("canonicalize returns the star permutation sign") {
  const auto [c, sign] = canonicalize(ShoikhetGraph::decode("1,2;0>2b,0>1|1>2b,1>1b"));
  CHECK(c.encode() == "1,2;0>1,0>2b|1>1b,1>2b");
  CHECK(sign == 1);
  const auto [c2, sign2] = canonicalize(ShoikhetGraph::decode("0,3;0>3b,0>1b,0>2b"));
  CHECK(c2.encode() == "0,3;0>1b,0>2b,0>3b");
  CHECK(sign2 == 1);
  CHECK(canonicalize(ShoikhetGraph::decode("0,2;0>2b,0>1b")).second == -1);
}

TEST_CASE("edge deletion, reordering and stabilization") {
  const ShoikhetGraph g = ShoikhetGraph::decode("1,3;0>1,0>2b,0>3b|1>1b,1>2b");
  CHECK(delete_central_edge(g, 2).encode() == "1,3;0>1,0>3b|1>1b,1>2b");
  const auto [r, sign] = reorder_central_star(g, 3);
  CHECK(r.central_star().front() == Vertex::boundary(3));
  CHECK(sign == 1);
  CHECK(reorder_central_star(g, 2).second == -1);
  const auto s = stabilize_graph(g);
  REQUIRE(s.has_value());
  CHECK(s->encode() == "1,2;0>1,0>1b,0>2b|1>0b,1>1b");
  CHECK_FALSE(stabilize_graph(ShoikhetGraph::decode("1,2;0>1b,0>2b|1>0b,1>1b")).has_value());
  CHECK_THROWS(delete_central_edge(g, 4));
}
