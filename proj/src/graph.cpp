#include "cycform/graph.hpp"

#include <algorithm>
#include <charconv>

#include "cycform/wedge.hpp"

namespace cycform {

std::string to_string(const Vertex& v) {
  return std::to_string(v.index) + (v.is_boundary() ? "b" : "");
}

ShoikhetGraph::ShoikhetGraph(int aerial_count, int boundary_last, std::vector<std::vector<Vertex>> stars)
    : n_(aerial_count), m_(boundary_last), stars_(std::move(stars)) {
  if (n_ < 0 || m_ < 0) throw GraphFormatError("vertex counts must be non-negative");
  if (stars_.size() > static_cast<std::size_t>(n_ + 1))
    throw GraphFormatError("more stars than aerial vertices");
  stars_.resize(static_cast<std::size_t>(n_ + 1));
  for (int v = 0; v <= n_; ++v) {
    for (const Vertex& t : stars_[static_cast<std::size_t>(v)]) {
      if (t.is_central()) throw GraphFormatError("edge ends at the central vertex");
      if (t.is_aerial() && (t.index < 1 || t.index > n_)) throw GraphFormatError("aerial target out of range");
      if (t.is_boundary() && (t.index < 0 || t.index > m_)) throw GraphFormatError("boundary target out of range");
      if (t.is_aerial() && t.index == v) throw GraphFormatError("tadpole at vertex " + std::to_string(v));
    }
  }
}

ShoikhetGraph ShoikhetGraph::edgeless(int aerial_count, int boundary_last) {
  return ShoikhetGraph(aerial_count, boundary_last, {});
}

int ShoikhetGraph::edge_count() const {
  int c = 0;
  for (const auto& s : stars_) c += static_cast<int>(s.size());
  return c;
}

bool ShoikhetGraph::has_edge_into(const Vertex& v) const {
  return std::any_of(stars_.begin(), stars_.end(),
                     [&](const auto& s) { return std::find(s.begin(), s.end(), v) != s.end(); });
}

bool ShoikhetGraph::has_parallel_edges() const {
  for (auto s : stars_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return true;
  }
  return false;
}

std::string ShoikhetGraph::encode() const {
  std::string out = std::to_string(n_) + "," + std::to_string(m_) + ";";
  for (int v = 0; v <= n_; ++v) {
    if (v) out += "|";
    const auto& s = stars_[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(v) + ">" + to_string(s[k]);
    }
  }
  return out;
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw GraphFormatError("bad number '" + std::string(s) + "' in graph '" + std::string(whole) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

ShoikhetGraph ShoikhetGraph::decode(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw GraphFormatError("graph encoding lacks ';': '" + std::string(text) + "'");
  std::string_view head = text.substr(0, semi);
  auto comma = head.find(',');
  if (comma == std::string_view::npos) throw GraphFormatError("graph header must be 'n,m': '" + std::string(text) + "'");
  int n = parse_int(trim(head.substr(0, comma)), text);
  int m = parse_int(trim(head.substr(comma + 1)), text);
  if (n < 0 || m < 0 || n > 64 || m > 64) throw GraphFormatError("vertex counts out of range in '" + std::string(text) + "'");
  std::vector<std::vector<Vertex>> stars(static_cast<std::size_t>(n + 1));
  std::string_view body = text.substr(semi + 1);
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t stop = body.find_first_of(",|", start);
    if (stop == std::string_view::npos) stop = body.size();
    std::string_view edge = trim(body.substr(start, stop - start));
    if (!edge.empty()) {
      auto arrow = edge.find('>');
      if (arrow == std::string_view::npos) throw GraphFormatError("edge '" + std::string(edge) + "' lacks '>'");
      int source = parse_int(trim(edge.substr(0, arrow)), text);
      std::string_view target = trim(edge.substr(arrow + 1));
      bool boundary = !target.empty() && target.back() == 'b';
      if (boundary) target.remove_suffix(1);
      int index = parse_int(target, text);
      if (source < 0 || source > n) throw GraphFormatError("edge source out of range in '" + std::string(text) + "'");
      stars[static_cast<std::size_t>(source)].push_back(boundary ? Vertex::boundary(index) : Vertex::aerial(index));
    }
    start = stop + 1;
  }
  return ShoikhetGraph(n, m, std::move(stars));
}

GraphSignature signature(const ShoikhetGraph& g) {
  GraphSignature s;
  s.central_degree = static_cast<int>(g.central_star().size());
  for (int v = 1; v <= g.aerial_count(); ++v) s.aerial_degrees.push_back(static_cast<int>(g.star(v).size()));
  s.edge_count = g.edge_count();
  s.dimension = g.configuration_dimension();
  return s;
}

namespace {

// All k-element subsets of `pool` (already ascending), in lexicographic order.
void subsets(const std::vector<Vertex>& pool, int k, std::vector<std::vector<Vertex>>& out) {
  std::vector<Vertex> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  if (k >= 0 && k <= static_cast<int>(pool.size())) rec(0);
}

std::vector<Vertex> targets_for(int source, int n, int m) {
  std::vector<Vertex> pool;
  for (int i = 1; i <= n; ++i)
    if (i != source) pool.push_back(Vertex::aerial(i));
  for (int k = 0; k <= m; ++k) pool.push_back(Vertex::boundary(k));
  return pool;
}

}  // namespace

std::vector<ShoikhetGraph> enumerate_graphs(int aerial_count, int boundary_last, int central_degree,
                                            const std::vector<int>& aerial_degrees) {
  std::vector<ShoikhetGraph> out;
  if (aerial_count < 0 || boundary_last < 0 || central_degree < 0) return out;
  if (static_cast<int>(aerial_degrees.size()) != aerial_count) return out;
  std::vector<std::vector<std::vector<Vertex>>> choices(static_cast<std::size_t>(aerial_count + 1));
  for (int v = 0; v <= aerial_count; ++v) {
    int degree = v == 0 ? central_degree : aerial_degrees[static_cast<std::size_t>(v - 1)];
    subsets(targets_for(v, aerial_count, boundary_last), degree, choices[static_cast<std::size_t>(v)]);
    if (choices[static_cast<std::size_t>(v)].empty()) return out;
  }
  std::vector<std::vector<Vertex>> stars(static_cast<std::size_t>(aerial_count + 1));
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == stars.size()) {
      out.emplace_back(aerial_count, boundary_last, stars);
      return;
    }
    for (const auto& choice : choices[v]) {
      stars[v] = choice;
      rec(v + 1);
    }
  };
  rec(0);
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keys.emplace_back(out[i].encode(), i);
  std::sort(keys.begin(), keys.end());
  std::vector<ShoikhetGraph> sorted;
  sorted.reserve(out.size());
  for (const auto& [key, i] : keys) sorted.push_back(out[i]);
  return sorted;
}

void for_each_graph(int aerial_count, int boundary_last, int central_degree,
                    const std::vector<int>& aerial_degrees,
                    const std::function<void(const ShoikhetGraph&)>& visit) {
  for (const auto& g : enumerate_graphs(aerial_count, boundary_last, central_degree, aerial_degrees)) visit(g);
}

ShoikhetGraph shift_graph(const ShoikhetGraph& g, int power) {
  const int m = g.boundary_last();
  if (m <= 1) return g;
  int p = ((power % m) + m) % m;
  auto stars = g.stars();
  for (auto& s : stars)
    for (Vertex& t : s)
      if (t.is_boundary() && t.index >= 1) t.index = (t.index - 1 + p) % m + 1;
  return ShoikhetGraph(g.aerial_count(), m, std::move(stars));
}

std::optional<ShoikhetGraph> stabilize_graph(const ShoikhetGraph& g) {
  if (g.boundary_last() < 1) throw std::invalid_argument("stabilize_graph needs at least two boundary vertices");
  if (g.has_edge_into(Vertex::boundary(0))) return std::nullopt;
  auto stars = g.stars();
  for (auto& s : stars)
    for (Vertex& t : s)
      if (t.is_boundary()) --t.index;
  return ShoikhetGraph(g.aerial_count(), g.boundary_last() - 1, std::move(stars));
}

ShoikhetGraph delete_central_edge(const ShoikhetGraph& g, int i) {
  const auto& c = g.central_star();
  if (i < 1 || i > static_cast<int>(c.size())) throw std::out_of_range("central edge index out of range");
  auto stars = g.stars();
  stars[0].erase(stars[0].begin() + (i - 1));
  return ShoikhetGraph(g.aerial_count(), g.boundary_last(), std::move(stars));
}

std::pair<ShoikhetGraph, int> reorder_central_star(const ShoikhetGraph& g, int i) {
  const auto& c = g.central_star();
  if (i < 1 || i > static_cast<int>(c.size())) throw std::out_of_range("central edge index out of range");
  auto stars = g.stars();
  std::rotate(stars[0].begin(), stars[0].begin() + (i - 1), stars[0].begin() + i);
  return {ShoikhetGraph(g.aerial_count(), g.boundary_last(), std::move(stars)), parity_sign(i + 1)};
}

std::pair<ShoikhetGraph, int> canonicalize(const ShoikhetGraph& g) {
  auto stars = g.stars();
  int sign = 1;
  for (auto& s : stars) {
    // Bubble sort keeps the permutation parity explicit; stars are tiny.
    for (std::size_t a = 1; a < s.size(); ++a)
      for (std::size_t b = a; b > 0 && s[b] < s[b - 1]; --b) {
        std::swap(s[b], s[b - 1]);
        sign = -sign;
      }
  }
  return {ShoikhetGraph(g.aerial_count(), g.boundary_last(), std::move(stars)), sign};
}

long star_factorial(const ShoikhetGraph& g) {
  long f = 1;
  for (const auto& s : g.stars())
    for (long k = 2; k <= static_cast<long>(s.size()); ++k) f *= k;
  return f;
}

}  // namespace cycform
