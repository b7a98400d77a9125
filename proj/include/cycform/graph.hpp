#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cycform {

/// A vertex of a Shoikhet graph. Aerial vertices are the type I vertices
/// 0..n (0 is the central vertex); boundary vertices are the type II
/// vertices 0b..mb. Aerial vertices order before boundary ones.
struct Vertex {
  enum class Kind : unsigned char { aerial, boundary };
  Kind kind = Kind::aerial;
  int index = 0;

  static constexpr Vertex aerial(int i) { return {Kind::aerial, i}; }
  static constexpr Vertex boundary(int i) { return {Kind::boundary, i}; }
  bool is_aerial() const { return kind == Kind::aerial; }
  bool is_boundary() const { return kind == Kind::boundary; }
  bool is_central() const { return kind == Kind::aerial && index == 0; }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::string to_string(const Vertex& v);

struct GraphFormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Directed graph with a central vertex, n further aerial vertices and
/// m+1 boundary vertices. Each aerial vertex carries an ordered star of
/// outgoing edges; the central star is E_c. Edges never start at a
/// boundary vertex, never end at the central vertex, and are not loops.
/// Values are immutable once constructed.
class ShoikhetGraph {
 public:
  /// stars[v] is the ordered list of targets of aerial vertex v = 0..n.
  ShoikhetGraph(int aerial_count, int boundary_last, std::vector<std::vector<Vertex>> stars);

  static ShoikhetGraph edgeless(int aerial_count, int boundary_last);

  int aerial_count() const { return n_; }     // n: aerial vertices besides the centre
  int boundary_last() const { return m_; }    // m: boundary vertices are 0b..mb
  int boundary_count() const { return m_ + 1; }

  const std::vector<Vertex>& star(int v) const { return stars_.at(static_cast<std::size_t>(v)); }
  const std::vector<Vertex>& central_star() const { return stars_.front(); }
  const std::vector<std::vector<Vertex>>& stars() const { return stars_; }

  int edge_count() const;
  /// Real dimension 2n+m of the configuration space.
  int configuration_dimension() const { return 2 * n_ + m_; }
  bool has_edge_into(const Vertex& v) const;
  bool has_parallel_edges() const;

  /// Canonical text encoding "n,m;0>1b,0>1|1>0b" with stars in vertex order.
  std::string encode() const;
  static ShoikhetGraph decode(std::string_view text);

  friend bool operator==(const ShoikhetGraph&, const ShoikhetGraph&) = default;
  friend auto operator<=>(const ShoikhetGraph& a, const ShoikhetGraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.stars_ <=> b.stars_;
  }

 private:
  int n_;
  int m_;
  std::vector<std::vector<Vertex>> stars_;
};

struct GraphSignature {
  int central_degree = 0;
  std::vector<int> aerial_degrees;
  int edge_count = 0;
  int dimension = 0;
  /// The weight can only be nonzero when the form degree matches the dimension.
  bool degree_matches() const { return edge_count == dimension; }
};

GraphSignature signature(const ShoikhetGraph& g);

/// Every graph with the prescribed out-degrees and no parallel edges, each
/// with targets in ascending vertex order, sorted by encoding.
std::vector<ShoikhetGraph> enumerate_graphs(int aerial_count, int boundary_last, int central_degree,
                                            const std::vector<int>& aerial_degrees);
void for_each_graph(int aerial_count, int boundary_last, int central_degree,
                    const std::vector<int>& aerial_degrees,
                    const std::function<void(const ShoikhetGraph&)>& visit);

/// Cyclic relabelling kb -> (k mod m)+1 b of the boundary vertices 1b..mb,
/// applied `power` times (negative powers invert). 0b is fixed.
ShoikhetGraph shift_graph(const ShoikhetGraph& g, int power = 1);

/// Deletes 0b and renumbers kb -> (k-1)b; empty when an edge ends at 0b.
std::optional<ShoikhetGraph> stabilize_graph(const ShoikhetGraph& g);

/// Removes the i-th central edge (1-based).
ShoikhetGraph delete_central_edge(const ShoikhetGraph& g, int i);

/// Moves the i-th central edge (1-based) to the front; the sign is that of
/// the induced permutation of the wedge factors, (-1)^{i+1}.
std::pair<ShoikhetGraph, int> reorder_central_star(const ShoikhetGraph& g, int i);

/// Sorts every star; returns the sign of the combined star permutation.
std::pair<ShoikhetGraph, int> canonicalize(const ShoikhetGraph& g);

/// Product over aerial vertices of (#Star(v))!.
long star_factorial(const ShoikhetGraph& g);

}  // namespace cycform
